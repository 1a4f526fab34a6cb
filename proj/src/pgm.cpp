#include "lpm/pgm.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace lpm {

void write_pgm(const Eigen::VectorXd& obs, int rows, int cols, std::ostream& out) {
  if (static_cast<Eigen::Index>(rows) * cols != obs.size()) {
    throw std::invalid_argument("write_pgm: rows*cols != observation size");
  }
  out << "P5\n" << cols << " " << rows << "\n255\n";
  for (Eigen::Index i = 0; i < obs.size(); ++i) {
    const int v = std::clamp(static_cast<int>(obs(i) * 255.0 + 0.5), 0, 255);
    out.put(static_cast<char>(v));
  }
}

void write_pgm_file(const Eigen::VectorXd& obs, int rows, int cols, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_pgm: cannot open " + path);
  write_pgm(obs, rows, cols, out);
}

}  // namespace lpm
