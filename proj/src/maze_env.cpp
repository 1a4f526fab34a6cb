#include "lpm/maze_env.hpp"

#include <algorithm>
#include <stdexcept>

namespace lpm {

namespace {

// dx, dy per facing: 0=N, 1=E, 2=S, 3=W.
constexpr int kDx[4] = {0, 1, 0, -1};
constexpr int kDy[4] = {-1, 0, 1, 0};

constexpr double kFloorBase[3] = {0.30, 0.55, 0.80};
constexpr double kWallBase[3] = {0.90, 0.15, 0.45};
constexpr double kNoiseLow = 0.02;
constexpr double kNoiseHigh = 0.95;

std::uint64_t hash_mix(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Deterministic value in [-1, 1) keyed by position and seed.
double hash_unit(std::uint64_t seed, int a, int b, int c, int d) {
  std::uint64_t h = seed;
  h = hash_mix(h ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(a + 1)));
  h = hash_mix(h ^ (0xC2B2AE3D27D4EB4FULL * static_cast<std::uint64_t>(b + 1)));
  h = hash_mix(h ^ (0x165667B19E3779F9ULL * static_cast<std::uint64_t>(c + 1)));
  h = hash_mix(h ^ (0x27D4EB2F165667C5ULL * static_cast<std::uint64_t>(d + 1)));
  return static_cast<double>(h >> 11) * 0x1.0p-52 - 1.0;
}

}  // namespace

GridMazeEnv::GridMazeEnv(MazeConfig config) : config_(config) {
  if (config_.room_w < 2 || config_.room_h < 2) {
    throw std::invalid_argument("GridMazeEnv: rooms must be at least 2x2");
  }
  width_ = 3 * config_.room_w + 4;
  height_ = config_.room_h + 2;

  cell_index_.assign(width_ * height_, -1);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      if (!is_wall(x, y)) {
        cell_index_[y * width_ + x] = static_cast<int>(walkable_cells_.size());
        walkable_cells_.emplace_back(x, y);
      }
    }
  }
}

bool GridMazeEnv::is_wall(int x, int y) const {
  if (x <= 0 || x >= width_ - 1 || y <= 0 || y >= height_ - 1) return true;
  const int wall1 = config_.room_w + 1;
  const int wall2 = 2 * config_.room_w + 2;
  if (x == wall1) return y != 1;             // door between rooms 0|1, top row
  if (x == wall2) return y != height_ - 2;   // door between rooms 1|2, bottom row
  return false;
}

bool GridMazeEnv::is_noisy_wall(int x, int y) const {
  // Wall segment above the middle room.
  return y == 0 && x > config_.room_w + 1 && x < 2 * config_.room_w + 2;
}

int GridMazeEnv::room_of(int x) const {
  if (x <= config_.room_w + 1) return 0;
  if (x <= 2 * config_.room_w + 2) return 1;
  return 2;
}

bool GridMazeEnv::walkable(int x, int y) const {
  if (x < 0 || x >= width_ || y < 0 || y >= height_) return false;
  return cell_index_[y * width_ + x] >= 0;
}

int GridMazeEnv::observation_dim() const {
  const int side = config_.view_cells * config_.pixels_per_cell;
  return side * side;
}

int GridMazeEnv::pose_id() const {
  return cell_index_[y_ * width_ + x_] * 4 + facing_;
}

int GridMazeEnv::start_state_id() const {
  return cell_index_[(height_ - 2) * width_ + 1] * 4 + 1;
}

StepResult GridMazeEnv::reset(std::uint64_t seed) {
  rng_ = Rng(seed);
  reset_called_ = true;
  x_ = 1;
  y_ = height_ - 2;  // bottom-left corner of the left room
  facing_ = 1;       // east

  // High-contrast binary noise: maximal pixel variance, reminiscent of
  // television static.
  noise_bank_.clear();
  noise_bank_.reserve(config_.noise_bank_size);
  Rng bank_rng = rng_.derive(0xBA);
  for (int i = 0; i < config_.noise_bank_size; ++i) {
    Eigen::VectorXd img(observation_dim());
    for (Eigen::Index p = 0; p < img.size(); ++p) {
      img(p) = bank_rng.uniform() < 0.5 ? kNoiseLow : kNoiseHigh;
    }
    noise_bank_.push_back(std::move(img));
  }
  return make_result(false);
}

StepResult GridMazeEnv::step(int action) {
  if (!reset_called_) throw std::logic_error("GridMazeEnv: step before reset");
  switch (action) {
    case kForward: {
      const int nx = x_ + kDx[facing_];
      const int ny = y_ + kDy[facing_];
      if (walkable(nx, ny)) {
        x_ = nx;
        y_ = ny;
      }
      break;
    }
    case kTurnLeft:
      facing_ = (facing_ + 3) % 4;
      break;
    case kTurnRight:
      facing_ = (facing_ + 1) % 4;
      break;
    case kIdle:
      break;
    default:
      throw std::invalid_argument("GridMazeEnv: invalid action " + std::to_string(action));
  }
  const bool noise_obs =
      config_.noise_mode == NoiseMode::kActionNoise && action == kIdle;
  return make_result(noise_obs);
}

StepResult GridMazeEnv::make_result(bool replace_with_noise) {
  StepResult r;
  r.latent_state_id = pose_id();
  r.extrinsic_reward = 0.0;
  r.done = false;
  if (replace_with_noise) {
    r.observation = noise_bank_[rng_.uniform_int(config_.noise_bank_size)];
  } else {
    r.observation = render();
  }
  return r;
}

double GridMazeEnv::cell_pixel_value(int wx, int wy, int px, int py) {
  if (wx < 0 || wx >= width_ || wy < 0 || wy >= height_) return 0.0;
  if (cell_index_[wy * width_ + wx] >= 0) {
    const int room = room_of(wx);
    double v = kFloorBase[room];
    v += 0.08 * hash_unit(config_.texture_seed, wx, wy, 0, 0);
    v += 0.03 * hash_unit(config_.texture_seed, wx, wy, px + 1, py + 1);
    return std::clamp(v, 0.0, 1.0);
  }
  // Wall cell. The noisy segment is resampled at every render under the
  // state-noise condition; everything else is static texture.
  if (config_.noise_mode == NoiseMode::kStateNoise && is_noisy_wall(wx, wy)) {
    return rng_.uniform() < 0.5 ? kNoiseLow : kNoiseHigh;
  }
  const int room = room_of(wx);
  double v = kWallBase[room];
  v += 0.06 * ((px + py) % 2 == 0 ? 1.0 : -1.0);  // checker so walls read as walls
  v += 0.05 * hash_unit(config_.texture_seed, wx, wy, 0, 1);
  return std::clamp(v, 0.0, 1.0);
}

Eigen::VectorXd GridMazeEnv::render() {
  const int vc = config_.view_cells;
  const int ppc = config_.pixels_per_cell;
  const int side = vc * ppc;
  Eigen::VectorXd obs(side * side);

  // right-hand direction relative to the facing
  const int rf = (facing_ + 1) % 4;
  const int half = vc / 2;

  for (int depth = 0; depth < vc; ++depth) {
    for (int lat = -half; lat < vc - half; ++lat) {
      const int wx = x_ + depth * kDx[facing_] + lat * kDx[rf];
      const int wy = y_ + depth * kDy[facing_] + lat * kDy[rf];
      const int vrow = vc - 1 - depth;  // agent at the bottom of the view
      const int vcol = lat + half;
      for (int py = 0; py < ppc; ++py) {
        for (int px = 0; px < ppc; ++px) {
          const int row = vrow * ppc + py;
          const int col = vcol * ppc + px;
          obs(row * side + col) = cell_pixel_value(wx, wy, px, py);
        }
      }
    }
  }
  return obs;
}

}  // namespace lpm
