#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lpm {

/// Trailing-window means of |x|: out[t] = mean(|x[t-w+1 .. t]|), defined
/// from t = w-1 on (earlier entries use the partial prefix).
std::vector<double> windowed_abs_mean(const std::vector<double>& x, int window);

/// Smallest step index (1-based) from which the windowed |x| mean stays
/// strictly below the threshold through the end of the trace; -1 if the
/// trace never settles. Steps before the window fills are not eligible.
std::int64_t convergence_crossing_step(const std::vector<double>& x, int window,
                                       double threshold);

double mean_of(const std::vector<double>& v);
double stddev_of(const std::vector<double>& v);  // population

/// Canonical float formatting shared by every CSV writer, so identical
/// runs produce byte-identical files.
std::string format_double(double v);

}  // namespace lpm
