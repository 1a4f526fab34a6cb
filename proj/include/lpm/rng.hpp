#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace lpm {

/// Deterministic PRNG: xoshiro256** seeded through splitmix64.
/// The same seed produces the same stream on every platform, and
/// derive(k) hands out independent substreams so parallel runs can
/// share a single root seed without overlapping.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : root_seed_(seed) {
    std::uint64_t x = seed;
    for (auto& word : state_) word = splitmix64(x);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1), 53 bits of precision.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n). Lemire's multiply-shift with rejection.
  int uniform_int(int n) {
    const auto bound = static_cast<std::uint64_t>(n);
    while (true) {
      const std::uint64_t x = next_u64();
      const auto m = static_cast<unsigned __int128>(x) * bound;
      const auto lo = static_cast<std::uint64_t>(m);
      if (lo >= bound || lo >= (-bound) % bound) {
        return static_cast<int>(static_cast<std::uint64_t>(m >> 64));
      }
    }
  }

  /// Standard normal via Box-Muller; stateless (two uniforms per draw).
  double normal() {
    const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  /// Independent substream keyed by (root seed, stream id).
  Rng derive(std::uint64_t stream) const {
    std::uint64_t x = root_seed_ ^ (0x9E3779B97F4A7C15ULL * (stream + 1));
    x = splitmix64(x);
    return Rng(splitmix64(x));
  }

  std::uint64_t root_seed() const { return root_seed_; }

  const std::array<std::uint64_t, 4>& state() const { return state_; }
  void set_state(const std::array<std::uint64_t, 4>& s) { state_ = s; }

 private:
  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  static std::uint64_t splitmix64(std::uint64_t&& x) {
    std::uint64_t v = x;
    return splitmix64(v);
  }
  static std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }

  std::uint64_t root_seed_;
  std::array<std::uint64_t, 4> state_{};
};

}  // namespace lpm
