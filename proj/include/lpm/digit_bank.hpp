#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace lpm {

/// 28x28 grayscale images in [0,1], grouped by class label 0-9.
struct DigitBank {
  static constexpr int kClassCount = 10;
  static constexpr int kRows = 28;
  static constexpr int kCols = 28;
  static constexpr int kImageDim = kRows * kCols;

  std::array<std::vector<Eigen::VectorXd>, kClassCount> classes;

  bool complete() const {
    for (const auto& c : classes) {
      if (c.empty()) return false;
    }
    return true;
  }

  std::int64_t total_images() const {
    std::int64_t n = 0;
    for (const auto& c : classes) n += static_cast<std::int64_t>(c.size());
    return n;
  }
};

/// Parses big-endian IDX image/label files (magic 0x00000803 / 0x00000801),
/// scales pixels to [0,1] and groups images by label. Malformed input is
/// rejected with the byte offset of the problem.
DigitBank load_idx(const std::string& images_path, const std::string& labels_path);

/// Ten fixed, visually distinct procedural patterns, one per class,
/// deterministic in the seed. Classes 2-9 carry equal-energy disjoint
/// bright bands, so each sits at exactly the same distance from the
/// group mean; that keeps the stochastic branch of the paired environment
/// noisy in identity but stationary in error magnitude.
DigitBank synthetic_digit_bank(std::uint64_t seed);

}  // namespace lpm
