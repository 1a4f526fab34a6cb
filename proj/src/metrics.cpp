#include "lpm/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace lpm {

std::vector<double> windowed_abs_mean(const std::vector<double>& x, int window) {
  if (window <= 0) throw std::invalid_argument("windowed_abs_mean: window must be positive");
  std::vector<double> out(x.size());
  double acc = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    acc += std::abs(x[t]);
    if (t >= static_cast<std::size_t>(window)) acc -= std::abs(x[t - window]);
    const auto n = std::min<std::size_t>(t + 1, window);
    out[t] = acc / static_cast<double>(n);
  }
  return out;
}

std::int64_t convergence_crossing_step(const std::vector<double>& x, int window,
                                       double threshold) {
  if (x.empty()) return -1;
  const auto means = windowed_abs_mean(x, window);
  std::int64_t crossing = -1;
  // Scan backwards: the crossing is the first index of the final run of
  // sub-threshold windowed means.
  for (std::int64_t t = static_cast<std::int64_t>(means.size()) - 1; t >= window - 1; --t) {
    if (means[t] < threshold) {
      crossing = t + 1;  // 1-based step
    } else {
      break;
    }
  }
  return crossing;
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double stddev_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size()));
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

}  // namespace lpm
