#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <deque>
#include <stdexcept>

namespace lpm {

struct Transition {
  Eigen::VectorXd obs;
  int action = 0;
  Eigen::VectorXd obs_next;
};

/// Replay buffer of raw transitions. capacity <= 0 means unbounded;
/// otherwise the oldest entry is evicted first.
class TransitionBuffer {
 public:
  explicit TransitionBuffer(std::int64_t capacity = 0) : capacity_(capacity) {}

  void push(Transition t) {
    if (capacity_ > 0 && static_cast<std::int64_t>(entries_.size()) == capacity_) {
      entries_.pop_front();
    }
    entries_.push_back(std::move(t));
  }

  std::int64_t size() const { return static_cast<std::int64_t>(entries_.size()); }
  bool empty() const { return entries_.empty(); }
  std::int64_t capacity() const { return capacity_; }

  const Transition& operator[](std::int64_t i) const { return entries_.at(i); }

  void clear() { entries_.clear(); }

 private:
  std::int64_t capacity_;
  std::deque<Transition> entries_;
};

struct ErrorRecord {
  Eigen::VectorXd obs;
  int action = 0;
  double eps = 0.0;      // log-MSE of the dynamics model at record time
  std::int64_t tau = 0;  // update step the dynamics model had completed
};

/// Fixed-size FIFO queue of prediction-error records. When full, the
/// oldest record is evicted before the new one is pushed, so the size
/// never exceeds the configured bound.
class ErrorQueue {
 public:
  explicit ErrorQueue(int capacity) : capacity_(capacity) {
    if (capacity <= 0) throw std::invalid_argument("ErrorQueue: capacity must be positive");
  }

  void push(ErrorRecord r) {
    if (static_cast<int>(entries_.size()) == capacity_) entries_.pop_front();
    entries_.push_back(std::move(r));
  }

  int size() const { return static_cast<int>(entries_.size()); }
  bool empty() const { return entries_.empty(); }
  bool full() const { return size() == capacity_; }
  int capacity() const { return capacity_; }

  const ErrorRecord& operator[](int i) const { return entries_.at(i); }

  std::int64_t max_tau() const {
    std::int64_t m = -1;
    for (const auto& r : entries_) m = std::max(m, r.tau);
    return m;
  }

  void clear() { entries_.clear(); }

 private:
  int capacity_;
  std::deque<ErrorRecord> entries_;
};

}  // namespace lpm
