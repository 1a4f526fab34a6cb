#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>

namespace lpm {

/// Binary PGM (P5) dump of a [0,1] grayscale observation, for debugging.
void write_pgm(const Eigen::VectorXd& obs, int rows, int cols, std::ostream& out);
void write_pgm_file(const Eigen::VectorXd& obs, int rows, int cols, const std::string& path);

}  // namespace lpm
