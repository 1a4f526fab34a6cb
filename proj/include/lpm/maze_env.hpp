#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lpm/env.hpp"
#include "lpm/rng.hpp"

namespace lpm {

struct MazeConfig {
  int room_w = 8;
  int room_h = 8;
  int view_cells = 8;        // egocentric window, view_cells x view_cells cells
  int pixels_per_cell = 2;   // rendered block per cell
  int noise_bank_size = 64;  // fixed random images for action-triggered noise
  NoiseMode noise_mode = NoiseMode::kNone;
  std::uint64_t texture_seed = 12345;  // static texture detail
};

/// Three-room grid maze connected in an N-shaped zigzag: the left and
/// middle rooms share a door on the top row, the middle and right rooms
/// on the bottom row. Each room has its own floor/wall texture. The
/// observation is a flattened egocentric grayscale patch; the latent
/// state id encodes the true (cell, facing) pose and never depends on
/// observation noise.
///
/// Noise conditions:
///  - state noise: the wall segment above the middle room shows fresh
///    random pixels every step, visible only from poses that face it;
///  - action noise: choosing idle replaces the whole observation with a
///    random image from a fixed bank generated at reset.
class GridMazeEnv {
 public:
  static constexpr int kForward = 0;
  static constexpr int kTurnLeft = 1;
  static constexpr int kTurnRight = 2;
  static constexpr int kIdle = 3;

  explicit GridMazeEnv(MazeConfig config);

  StepResult reset(std::uint64_t seed);
  StepResult step(int action);

  int action_count() const { return 4; }
  int observation_dim() const;
  int cell_count() const { return static_cast<int>(walkable_cells_.size()); }
  int state_count() const { return cell_count() * 4; }

  int latent_cell(int latent_state_id) const { return latent_state_id / 4; }
  int latent_facing(int latent_state_id) const { return latent_state_id % 4; }

  int grid_width() const { return width_; }
  int grid_height() const { return height_; }
  bool walkable(int x, int y) const;
  const MazeConfig& config() const { return config_; }
  const std::vector<Eigen::VectorXd>& noise_image_bank() const { return noise_bank_; }

  int agent_x() const { return x_; }
  int agent_y() const { return y_; }
  int agent_facing() const { return facing_; }
  int start_state_id() const;

 private:
  StepResult make_result(bool replace_with_noise);
  Eigen::VectorXd render();
  double cell_pixel_value(int wx, int wy, int px, int py);
  bool is_wall(int x, int y) const;
  bool is_noisy_wall(int x, int y) const;
  int room_of(int x) const;
  int pose_id() const;

  MazeConfig config_;
  int width_ = 0;
  int height_ = 0;
  std::vector<int> cell_index_;           // -1 for walls, else walkable index
  std::vector<std::pair<int, int>> walkable_cells_;
  std::vector<Eigen::VectorXd> noise_bank_;
  Rng rng_{0};
  bool reset_called_ = false;
  int x_ = 0, y_ = 0, facing_ = 0;
};

}  // namespace lpm
