// python bindings for the exploration core: numeric primitives, the two
// simulation environments, every explorer, the exact information-gain
// oracle, and tabular Q-learning.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lpm/baselines.hpp"
#include "lpm/digit_bank.hpp"
#include "lpm/harness.hpp"
#include "lpm/ig_oracle.hpp"
#include "lpm/loss.hpp"
#include "lpm/maze_env.hpp"
#include "lpm/paired_env.hpp"
#include "lpm/qlearn.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

// Explorers own their RNG; python sees a seed, not the stream.
std::unique_ptr<lpm::Explorer> make_explorer_py(const std::string& kind, int obs_dim,
                                                int action_count, const lpm::LpmConfig& lpm_cfg,
                                                const lpm::TrainingConfig& train_cfg,
                                                std::uint64_t seed) {
  return lpm::make_explorer(lpm::explorer_kind_from_name(kind), obs_dim, action_count, lpm_cfg,
                            train_cfg, lpm::Rng(seed));
}

}  // namespace

PYBIND11_MODULE(lpmx, m) {
  m.doc() = "learning-progress intrinsic-reward exploration testbed";

  // ---------------------------------------------------------- numeric
  m.def("log_mse", &lpm::log_mse, "target"_a, "prediction"_a,
        "floor"_a = lpm::kDefaultMseFloor,
        "ln(max(floor, mean squared difference))");
  m.def("mean_squared_error", &lpm::mean_squared_error, "target"_a, "prediction"_a);
  m.def("combined_reward", &lpm::combined_reward, "extrinsic"_a, "intrinsic"_a, "beta"_a);

  // ---------------------------------------------------------- envs
  py::class_<lpm::StepResult>(m, "StepResult")
      .def_readonly("observation", &lpm::StepResult::observation)
      .def_readonly("extrinsic_reward", &lpm::StepResult::extrinsic_reward)
      .def_readonly("done", &lpm::StepResult::done)
      .def_readonly("latent_state_id", &lpm::StepResult::latent_state_id);

  py::class_<lpm::DigitBank>(m, "DigitBank")
      .def_property_readonly("classes",
                             [](const lpm::DigitBank& b) {
                               std::vector<std::vector<Eigen::VectorXd>> out;
                               for (const auto& c : b.classes) out.push_back(c);
                               return out;
                             })
      .def("total_images", &lpm::DigitBank::total_images);

  m.def("synthetic_digit_bank", &lpm::synthetic_digit_bank, "seed"_a);
  m.def("load_idx", &lpm::load_idx, "images_path"_a, "labels_path"_a);

  py::class_<lpm::PairedTransitionEnv>(m, "PairedTransitionEnv")
      .def(py::init<lpm::DigitBank>(), "bank"_a)
      .def("reset", &lpm::PairedTransitionEnv::reset, "seed"_a)
      .def("step", &lpm::PairedTransitionEnv::step, "action"_a)
      .def("anchor", &lpm::PairedTransitionEnv::anchor, "branch"_a,
           py::return_value_policy::copy)
      .def_property_readonly("action_count", &lpm::PairedTransitionEnv::action_count)
      .def_property_readonly("observation_dim", &lpm::PairedTransitionEnv::observation_dim)
      .def_readonly_static("VISIT_DETERMINISTIC", &lpm::PairedTransitionEnv::kVisitDeterministic)
      .def_readonly_static("VISIT_STOCHASTIC", &lpm::PairedTransitionEnv::kVisitStochastic);

  py::enum_<lpm::NoiseMode>(m, "NoiseMode")
      .value("NONE", lpm::NoiseMode::kNone)
      .value("STATE_NOISE", lpm::NoiseMode::kStateNoise)
      .value("ACTION_NOISE", lpm::NoiseMode::kActionNoise);

  py::class_<lpm::MazeConfig>(m, "MazeConfig")
      .def(py::init<>())
      .def_readwrite("room_w", &lpm::MazeConfig::room_w)
      .def_readwrite("room_h", &lpm::MazeConfig::room_h)
      .def_readwrite("view_cells", &lpm::MazeConfig::view_cells)
      .def_readwrite("pixels_per_cell", &lpm::MazeConfig::pixels_per_cell)
      .def_readwrite("noise_bank_size", &lpm::MazeConfig::noise_bank_size)
      .def_readwrite("noise_mode", &lpm::MazeConfig::noise_mode)
      .def_readwrite("texture_seed", &lpm::MazeConfig::texture_seed);

  py::class_<lpm::GridMazeEnv>(m, "GridMazeEnv")
      .def(py::init<lpm::MazeConfig>(), "config"_a = lpm::MazeConfig{})
      .def("reset", &lpm::GridMazeEnv::reset, "seed"_a)
      .def("step", &lpm::GridMazeEnv::step, "action"_a)
      .def_property_readonly("action_count", &lpm::GridMazeEnv::action_count)
      .def_property_readonly("observation_dim", &lpm::GridMazeEnv::observation_dim)
      .def_property_readonly("state_count", &lpm::GridMazeEnv::state_count)
      .def_property_readonly("cell_count", &lpm::GridMazeEnv::cell_count)
      .def("latent_cell", &lpm::GridMazeEnv::latent_cell, "latent_state_id"_a)
      .def("latent_facing", &lpm::GridMazeEnv::latent_facing, "latent_state_id"_a)
      .def_readonly_static("FORWARD", &lpm::GridMazeEnv::kForward)
      .def_readonly_static("TURN_LEFT", &lpm::GridMazeEnv::kTurnLeft)
      .def_readonly_static("TURN_RIGHT", &lpm::GridMazeEnv::kTurnRight)
      .def_readonly_static("IDLE", &lpm::GridMazeEnv::kIdle);

  // ---------------------------------------------------------- explorers
  py::class_<lpm::LpmConfig>(m, "LpmConfig")
      .def(py::init<>())
      .def_readwrite("update_every", &lpm::LpmConfig::update_every)
      .def_readwrite("queue_size", &lpm::LpmConfig::queue_size)
      .def_readwrite("batch_size", &lpm::LpmConfig::batch_size)
      .def_readwrite("epochs_per_update", &lpm::LpmConfig::epochs_per_update)
      .def_readwrite("dynamics_minibatches_per_update",
                     &lpm::LpmConfig::dynamics_minibatches_per_update)
      .def_readwrite("learning_rate", &lpm::LpmConfig::learning_rate)
      .def_readwrite("mse_floor", &lpm::LpmConfig::mse_floor)
      .def_readwrite("intrinsic_weight", &lpm::LpmConfig::intrinsic_weight)
      .def_readwrite("buffer_capacity", &lpm::LpmConfig::buffer_capacity)
      .def_readwrite("dynamics_hidden", &lpm::LpmConfig::dynamics_hidden)
      .def_readwrite("error_hidden", &lpm::LpmConfig::error_hidden);

  py::class_<lpm::TrainingConfig>(m, "TrainingConfig")
      .def(py::init<>())
      .def_readwrite("learning_rate", &lpm::TrainingConfig::learning_rate)
      .def_readwrite("batch_size", &lpm::TrainingConfig::batch_size)
      .def_readwrite("minibatches_per_update", &lpm::TrainingConfig::minibatches_per_update)
      .def_readwrite("update_every", &lpm::TrainingConfig::update_every)
      .def_readwrite("buffer_capacity", &lpm::TrainingConfig::buffer_capacity)
      .def_readwrite("hidden", &lpm::TrainingConfig::hidden);

  py::class_<lpm::Explorer>(m, "Explorer")
      .def("observe", &lpm::Explorer::observe, "obs"_a, "action"_a, "obs_next"_a)
      .def("update", &lpm::Explorer::update)
      .def_property_readonly("name", &lpm::Explorer::name);

  m.def("make_explorer", &make_explorer_py, "kind"_a, "obs_dim"_a, "action_count"_a,
        "lpm_config"_a = lpm::LpmConfig{}, "train_config"_a = lpm::TrainingConfig{},
        "seed"_a = 0,
        "construct an intrinsic-reward producer: lpm, pe, rnd, ensemble, ama or random");

  // ---------------------------------------------------------- oracle
  py::class_<lpm::ParameterGrid>(m, "ParameterGrid")
      .def(py::init<>())
      .def_readwrite("prior", &lpm::ParameterGrid::prior)
      .def_readwrite("mse", &lpm::ParameterGrid::mse)
      .def_readwrite("c", &lpm::ParameterGrid::c);

  m.def("posterior", &lpm::posterior, "grid"_a);
  m.def(
      "information_gain",
      [](const lpm::ParameterGrid& grid) {
        const auto ig = lpm::information_gain(grid);
        return py::make_tuple(ig.kl_route, ig.definition_route);
      },
      "grid"_a, "both routes: (KL(posterior||prior), E_post[loglik] - log evidence)");

  py::enum_<lpm::ThetaPolicy>(m, "ThetaPolicy")
      .value("EXACT_MLE", lpm::ThetaPolicy::kExactMle)
      .value("CONDITION_SATISFYING_SUBMAXIMAL",
             lpm::ThetaPolicy::kConditionSatisfyingSubmaximal);

  py::class_<lpm::OracleReport>(m, "OracleReport")
      .def_readonly("ig", &lpm::OracleReport::ig)
      .def_readonly("r_exp", &lpm::OracleReport::r_exp)
      .def_readonly("r_point", &lpm::OracleReport::r_point)
      .def_readonly("theta_d_index", &lpm::OracleReport::theta_d_index)
      .def_readonly("theta_d_found", &lpm::OracleReport::theta_d_found);

  m.def("intrinsic_rewards", &lpm::intrinsic_rewards, "grid"_a, "policy"_a);
  m.def(
      "check_theorems",
      [](int instance_count, std::uint64_t seed) {
        lpm::Rng rng(seed);
        const auto s = lpm::check_theorems(instance_count, rng);
        py::dict d;
        d["instances"] = s.instances;
        d["all_pass"] = s.all_pass();
        d["kl_identity_failures"] = s.kl_identity_failures;
        d["monotone_bound_failures"] = s.monotone_bound_failures;
        d["zero_equivalence_failures"] = s.zero_equivalence_failures;
        d["mle_dominance_failures"] = s.mle_dominance_failures;
        d["t2_counterexamples"] = s.t2_counterexamples;
        d["seconds"] = s.seconds;
        return d;
      },
      "instance_count"_a, "seed"_a = 99);

  // ---------------------------------------------------------- agent
  py::class_<lpm::QTable>(m, "QTable")
      .def(py::init<int, int, double, double>(), "state_count"_a, "action_count"_a,
           "alpha"_a = 0.1, "gamma"_a = 0.99)
      .def("value", &lpm::QTable::value, "state"_a, "action"_a)
      .def("greedy_action", &lpm::QTable::greedy_action, "state"_a)
      .def("update", &lpm::QTable::update, "state"_a, "action"_a, "reward_total"_a,
           "next_state"_a, "done"_a);
}
