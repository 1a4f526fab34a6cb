#include "lpm/env.hpp"

#include <stdexcept>

namespace lpm {

const char* noise_mode_name(NoiseMode mode) {
  switch (mode) {
    case NoiseMode::kNone:
      return "none";
    case NoiseMode::kStateNoise:
      return "state_noise";
    case NoiseMode::kActionNoise:
      return "action_noise";
  }
  return "none";
}

NoiseMode noise_mode_from_name(const std::string& name) {
  if (name == "none") return NoiseMode::kNone;
  if (name == "state_noise") return NoiseMode::kStateNoise;
  if (name == "action_noise") return NoiseMode::kActionNoise;
  throw std::invalid_argument("unknown noise mode: " + name);
}

}  // namespace lpm
