#include "lpm/digit_bank.hpp"

#include <fstream>
#include <stdexcept>
#include <vector>

#include "lpm/rng.hpp"

namespace lpm {

namespace {

constexpr std::uint32_t kImagesMagic = 0x00000803;
constexpr std::uint32_t kLabelsMagic = 0x00000801;

[[noreturn]] void parse_fail(const std::string& path, std::int64_t offset,
                             const std::string& what) {
  throw std::runtime_error("idx parse error in " + path + " at offset " +
                           std::to_string(offset) + ": " + what);
}

std::vector<unsigned char> read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("idx parse error: cannot open " + path);
  return std::vector<unsigned char>(std::istreambuf_iterator<char>(in),
                                    std::istreambuf_iterator<char>());
}

std::uint32_t read_u32(const std::vector<unsigned char>& buf, std::int64_t offset,
                       const std::string& path) {
  if (offset + 4 > static_cast<std::int64_t>(buf.size())) {
    parse_fail(path, offset, "truncated while reading 32-bit field");
  }
  return (static_cast<std::uint32_t>(buf[offset]) << 24) |
         (static_cast<std::uint32_t>(buf[offset + 1]) << 16) |
         (static_cast<std::uint32_t>(buf[offset + 2]) << 8) |
         static_cast<std::uint32_t>(buf[offset + 3]);
}

}  // namespace

DigitBank load_idx(const std::string& images_path, const std::string& labels_path) {
  const auto img = read_all(images_path);
  const auto lbl = read_all(labels_path);

  const std::uint32_t img_magic = read_u32(img, 0, images_path);
  if (img_magic != kImagesMagic) {
    parse_fail(images_path, 0, "unexpected magic 0x" + [&] {
      char buf[16];
      std::snprintf(buf, sizeof(buf), "%08x", img_magic);
      return std::string(buf);
    }());
  }
  const std::int64_t count = read_u32(img, 4, images_path);
  const std::int64_t rows = read_u32(img, 8, images_path);
  const std::int64_t cols = read_u32(img, 12, images_path);
  const std::int64_t pixels = rows * cols;
  if (16 + count * pixels > static_cast<std::int64_t>(img.size())) {
    parse_fail(images_path, static_cast<std::int64_t>(img.size()),
               "truncated image payload, expected " + std::to_string(16 + count * pixels) +
                   " bytes");
  }

  const std::uint32_t lbl_magic = read_u32(lbl, 0, labels_path);
  if (lbl_magic != kLabelsMagic) {
    parse_fail(labels_path, 0, "unexpected magic");
  }
  const std::int64_t lbl_count = read_u32(lbl, 4, labels_path);
  if (lbl_count != count) {
    parse_fail(labels_path, 4,
               "label count " + std::to_string(lbl_count) + " != image count " +
                   std::to_string(count));
  }
  if (8 + lbl_count > static_cast<std::int64_t>(lbl.size())) {
    parse_fail(labels_path, static_cast<std::int64_t>(lbl.size()), "truncated label payload");
  }

  DigitBank bank;
  for (std::int64_t i = 0; i < count; ++i) {
    const unsigned char label = lbl[8 + i];
    if (label >= DigitBank::kClassCount) {
      parse_fail(labels_path, 8 + i, "label " + std::to_string(label) + " out of range");
    }
    Eigen::VectorXd v(pixels);
    const std::int64_t base = 16 + i * pixels;
    for (std::int64_t p = 0; p < pixels; ++p) {
      v(p) = static_cast<double>(img[base + p]) / 255.0;
    }
    bank.classes[label].push_back(std::move(v));
  }
  return bank;
}

DigitBank synthetic_digit_bank(std::uint64_t seed) {
  constexpr int kDim = DigitBank::kImageDim;
  constexpr int kBand = 78;  // disjoint per-class bands: 10 * 78 <= 784
  constexpr double kLow = 0.02;
  constexpr double kHigh = 0.95;

  // The seed permutes which band belongs to which class; band geometry
  // (and therefore every pairwise distance) is seed-independent.
  Rng rng(seed);
  std::array<int, DigitBank::kClassCount> band_of{};
  for (int c = 0; c < DigitBank::kClassCount; ++c) band_of[c] = c;
  for (int i = DigitBank::kClassCount - 1; i > 0; --i) {
    std::swap(band_of[i], band_of[rng.uniform_int(i + 1)]);
  }

  DigitBank bank;
  for (int c = 0; c < DigitBank::kClassCount; ++c) {
    Eigen::VectorXd v = Eigen::VectorXd::Constant(kDim, kLow);
    const int start = band_of[c] * kBand;
    for (int p = start; p < start + kBand; ++p) v(p) = kHigh;
    // Stripe the band so classes read as distinct textures, keeping the
    // same set of pixel values (distances stay exactly equal).
    for (int p = start + (c % 2); p < start + kBand; p += 4) v(p) = kHigh - 0.10;
    // 20 striped pixels per band for either parity offset, so every class
    // band carries the same value profile.
    bank.classes[c].push_back(std::move(v));
  }
  return bank;
}

}  // namespace lpm
