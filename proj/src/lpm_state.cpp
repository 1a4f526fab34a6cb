#include "lpm/lpm_state.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "lpm/loss.hpp"
#include "lpm/train.hpp"

namespace lpm {

namespace {

using nlohmann::json;

json matrix_to_json(const Eigen::MatrixXd& m) {
  json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  std::vector<double> data(m.data(), m.data() + m.size());
  j["data"] = std::move(data);
  return j;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  Eigen::MatrixXd m(j.at("rows").get<Eigen::Index>(), j.at("cols").get<Eigen::Index>());
  const auto data = j.at("data").get<std::vector<double>>();
  if (static_cast<Eigen::Index>(data.size()) != m.size()) {
    throw std::runtime_error("checkpoint: matrix payload size mismatch");
  }
  std::copy(data.begin(), data.end(), m.data());
  return m;
}

json vector_to_json(const Eigen::VectorXd& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

Eigen::VectorXd vector_from_json(const json& j) {
  const auto data = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(data.data(), static_cast<Eigen::Index>(data.size()));
}

json model_to_json(const MlpModel& m) {
  json j;
  j["layer_sizes"] = m.layer_sizes();
  j["hidden_activation"] = static_cast<int>(m.hidden_activation());
  j["output_activation"] = static_cast<int>(m.output_activation());
  j["weights"] = json::array();
  for (const auto& w : m.weights()) j["weights"].push_back(matrix_to_json(w));
  j["biases"] = json::array();
  for (const auto& b : m.biases()) j["biases"].push_back(vector_to_json(b));
  return j;
}

MlpModel model_from_json(const json& j) {
  MlpModel m(j.at("layer_sizes").get<std::vector<int>>(),
             static_cast<Activation>(j.at("hidden_activation").get<int>()),
             static_cast<Activation>(j.at("output_activation").get<int>()));
  const auto& jw = j.at("weights");
  const auto& jb = j.at("biases");
  for (std::size_t l = 0; l < m.weights().size(); ++l) {
    m.weights()[l] = matrix_from_json(jw.at(l));
    m.biases()[l] = vector_from_json(jb.at(l));
  }
  return m;
}

json adam_to_json(const AdamState& a) {
  json j;
  j["learning_rate"] = a.config().learning_rate;
  j["beta1"] = a.config().beta1;
  j["beta2"] = a.config().beta2;
  j["epsilon"] = a.config().epsilon;
  j["step_count"] = a.step_count();
  auto& s = const_cast<AdamState&>(a);
  j["weight_m"] = json::array();
  for (const auto& m : s.weight_m()) j["weight_m"].push_back(matrix_to_json(m));
  j["weight_v"] = json::array();
  for (const auto& m : s.weight_v()) j["weight_v"].push_back(matrix_to_json(m));
  j["bias_m"] = json::array();
  for (const auto& m : s.bias_m()) j["bias_m"].push_back(vector_to_json(m));
  j["bias_v"] = json::array();
  for (const auto& m : s.bias_v()) j["bias_v"].push_back(vector_to_json(m));
  return j;
}

void adam_from_json(const json& j, const MlpModel& shape, AdamState& out) {
  AdamConfig cfg;
  cfg.learning_rate = j.at("learning_rate").get<double>();
  cfg.beta1 = j.at("beta1").get<double>();
  cfg.beta2 = j.at("beta2").get<double>();
  cfg.epsilon = j.at("epsilon").get<double>();
  out = AdamState(shape, cfg);
  out.set_step_count(j.at("step_count").get<std::int64_t>());
  for (std::size_t l = 0; l < out.weight_m().size(); ++l) {
    out.weight_m()[l] = matrix_from_json(j.at("weight_m").at(l));
    out.weight_v()[l] = matrix_from_json(j.at("weight_v").at(l));
    out.bias_m()[l] = vector_from_json(j.at("bias_m").at(l));
    out.bias_v()[l] = vector_from_json(j.at("bias_v").at(l));
  }
}

constexpr int kCheckpointVersion = 1;

}  // namespace

void LpmConfig::validate() const {
  if (update_every <= 0) throw std::invalid_argument("LpmConfig: update_every must be positive");
  if (queue_size <= 0) throw std::invalid_argument("LpmConfig: queue_size must be positive");
  if (batch_size <= 0) throw std::invalid_argument("LpmConfig: batch_size must be positive");
  if (epochs_per_update <= 0) throw std::invalid_argument("LpmConfig: epochs_per_update must be positive");
  if (dynamics_minibatches_per_update <= 0) {
    throw std::invalid_argument("LpmConfig: dynamics_minibatches_per_update must be positive");
  }
  if (learning_rate <= 0) throw std::invalid_argument("LpmConfig: learning_rate must be positive");
  if (mse_floor <= 0) throw std::invalid_argument("LpmConfig: mse_floor must be positive");
  if (intrinsic_weight < 0) throw std::invalid_argument("LpmConfig: intrinsic_weight must be >= 0");
}

LpmState::LpmState(int obs_dim, int action_count, LpmConfig config, Rng rng)
    : obs_dim_(obs_dim),
      action_count_(action_count),
      config_(std::move(config)),
      rng_(rng),
      transitions_(config_.buffer_capacity),
      errors_(config_.queue_size) {
  config_.validate();
  if (obs_dim <= 0 || action_count <= 0) {
    throw std::invalid_argument("LpmState: obs_dim and action_count must be positive");
  }

  std::vector<int> f_sizes;
  f_sizes.push_back(obs_dim + action_count);
  f_sizes.insert(f_sizes.end(), config_.dynamics_hidden.begin(), config_.dynamics_hidden.end());
  f_sizes.push_back(obs_dim);
  dynamics_ = MlpModel(f_sizes, config_.hidden_activation, config_.dynamics_output);

  std::vector<int> g_sizes;
  g_sizes.push_back(obs_dim + action_count);
  g_sizes.insert(g_sizes.end(), config_.error_hidden.begin(), config_.error_hidden.end());
  g_sizes.push_back(1);
  error_ = MlpModel(g_sizes, config_.hidden_activation, Activation::kIdentity);

  Rng f_rng = rng_.derive(1);
  Rng g_rng = rng_.derive(2);
  dynamics_.init_random(f_rng);
  error_.init_random(g_rng);

  AdamConfig adam_cfg;
  adam_cfg.learning_rate = config_.learning_rate;
  adam_cfg.beta1 = config_.adam_beta1;
  adam_cfg.epsilon = config_.adam_epsilon;
  dynamics_adam_ = AdamState(dynamics_, adam_cfg);
  error_adam_ = AdamState(error_, adam_cfg);
}

double LpmState::observe(const Eigen::VectorXd& obs, int action,
                         const Eigen::VectorXd& obs_next) {
  if (obs.size() != obs_dim_ || obs_next.size() != obs_dim_) {
    throw std::invalid_argument("lpm observe: observation dim mismatch");
  }
  const Eigen::VectorXd x = encode_obs_action(obs, action, action_count_);
  const double eps = log_mse(obs_next, dynamics_.forward(x), config_.mse_floor);
  last_epsilon_ = eps;

  // Reward is gated on queue fullness before this step's push, so the
  // first queue_size observations score exactly zero.
  const bool was_full = errors_.full();
  transitions_.push({obs, action, obs_next});
  errors_.push({obs, action, eps, tau_});

  if (!was_full) return 0.0;
  return error_.forward(x)(0) - eps;
}

void LpmState::train_error_model() {
  const int n = errors_.size();
  Eigen::MatrixXd inputs(n, obs_dim_ + action_count_);
  Eigen::MatrixXd targets(n, 1);
  for (int i = 0; i < n; ++i) {
    inputs.row(i) = encode_obs_action(errors_[i].obs, errors_[i].action, action_count_);
    targets(i, 0) = errors_[i].eps;
  }
  for (int epoch = 0; epoch < config_.epochs_per_update; ++epoch) {
    for (const auto& chunk : epoch_minibatches(n, config_.batch_size, rng_)) {
      Eigen::MatrixXd x(chunk.size(), inputs.cols());
      Eigen::MatrixXd y(chunk.size(), 1);
      for (std::size_t r = 0; r < chunk.size(); ++r) {
        x.row(r) = inputs.row(chunk[r]);
        y.row(r) = targets.row(chunk[r]);
      }
      mse_regression_step(error_, error_adam_, x, y);
      last_update_stats_.error_minibatches += 1;
    }
  }
  last_update_stats_.error_model_trained = true;
}

void LpmState::train_dynamics_model() {
  const auto n = transitions_.size();
  for (int epoch = 0; epoch < config_.epochs_per_update; ++epoch) {
    for (int b = 0; b < config_.dynamics_minibatches_per_update; ++b) {
      const auto idx = sampled_minibatch(static_cast<int>(n), config_.batch_size, rng_);
      Eigen::MatrixXd x(idx.size(), obs_dim_ + action_count_);
      Eigen::MatrixXd y(idx.size(), obs_dim_);
      for (std::size_t r = 0; r < idx.size(); ++r) {
        const Transition& t = transitions_[idx[r]];
        x.row(r) = encode_obs_action(t.obs, t.action, action_count_);
        y.row(r) = t.obs_next;
      }
      mse_regression_step(dynamics_, dynamics_adam_, x, y);
      last_update_stats_.dynamics_minibatches += 1;
    }
  }
  last_update_stats_.dynamics_model_trained = true;
}

LpmUpdateStats LpmState::update() {
  tau_ += 1;
  last_update_stats_ = LpmUpdateStats{};
  last_update_stats_.tau = tau_;
  last_update_stats_.error_fit_max_record_tau = errors_.max_tau();

  // Order matters: fit g on errors of the pre-update dynamics model first,
  // then move f. Every queued record carries tau < tau_ at this point.
  if (!errors_.empty()) {
    train_error_model();
  }
  if (!transitions_.empty()) {
    train_dynamics_model();
  }
  return last_update_stats_;
}

double LpmState::predict_error(const Eigen::VectorXd& obs, int action) const {
  return error_.forward(encode_obs_action(obs, action, action_count_))(0);
}

Eigen::VectorXd LpmState::predict_next(const Eigen::VectorXd& obs, int action) const {
  return dynamics_.forward(encode_obs_action(obs, action, action_count_));
}

void LpmState::save(std::ostream& out) const {
  json j;
  j["format"] = "lpm-checkpoint";
  j["version"] = kCheckpointVersion;
  j["obs_dim"] = obs_dim_;
  j["action_count"] = action_count_;
  j["tau"] = tau_;
  j["last_epsilon"] = last_epsilon_;

  json cfg;
  cfg["update_every"] = config_.update_every;
  cfg["queue_size"] = config_.queue_size;
  cfg["batch_size"] = config_.batch_size;
  cfg["epochs_per_update"] = config_.epochs_per_update;
  cfg["dynamics_minibatches_per_update"] = config_.dynamics_minibatches_per_update;
  cfg["learning_rate"] = config_.learning_rate;
  cfg["adam_beta1"] = config_.adam_beta1;
  cfg["adam_epsilon"] = config_.adam_epsilon;
  cfg["mse_floor"] = config_.mse_floor;
  cfg["intrinsic_weight"] = config_.intrinsic_weight;
  cfg["buffer_capacity"] = config_.buffer_capacity;
  cfg["dynamics_hidden"] = config_.dynamics_hidden;
  cfg["error_hidden"] = config_.error_hidden;
  cfg["hidden_activation"] = static_cast<int>(config_.hidden_activation);
  cfg["dynamics_output"] = static_cast<int>(config_.dynamics_output);
  j["config"] = cfg;

  j["dynamics"] = model_to_json(dynamics_);
  j["error"] = model_to_json(error_);
  j["dynamics_adam"] = adam_to_json(dynamics_adam_);
  j["error_adam"] = adam_to_json(error_adam_);

  json jb = json::array();
  for (std::int64_t i = 0; i < transitions_.size(); ++i) {
    const Transition& t = transitions_[i];
    jb.push_back({{"o", vector_to_json(t.obs)},
                  {"a", t.action},
                  {"o_next", vector_to_json(t.obs_next)}});
  }
  j["transitions"] = std::move(jb);

  json jd = json::array();
  for (int i = 0; i < errors_.size(); ++i) {
    const ErrorRecord& r = errors_[i];
    jd.push_back({{"o", vector_to_json(r.obs)},
                  {"a", r.action},
                  {"eps", r.eps},
                  {"tau", r.tau}});
  }
  j["errors"] = std::move(jd);

  j["rng_root_seed"] = rng_.root_seed();
  j["rng_state"] = rng_.state();
  out << j.dump();
}

LpmState LpmState::load(std::istream& in) {
  json j = json::parse(in);
  if (j.at("format").get<std::string>() != "lpm-checkpoint") {
    throw std::runtime_error("checkpoint: unrecognized format tag");
  }
  if (j.at("version").get<int>() != kCheckpointVersion) {
    throw std::runtime_error("checkpoint: unsupported version");
  }

  LpmConfig cfg;
  const json& jc = j.at("config");
  cfg.update_every = jc.at("update_every").get<int>();
  cfg.queue_size = jc.at("queue_size").get<int>();
  cfg.batch_size = jc.at("batch_size").get<int>();
  cfg.epochs_per_update = jc.at("epochs_per_update").get<int>();
  cfg.dynamics_minibatches_per_update = jc.at("dynamics_minibatches_per_update").get<int>();
  cfg.learning_rate = jc.at("learning_rate").get<double>();
  cfg.adam_beta1 = jc.at("adam_beta1").get<double>();
  cfg.adam_epsilon = jc.at("adam_epsilon").get<double>();
  cfg.mse_floor = jc.at("mse_floor").get<double>();
  cfg.intrinsic_weight = jc.at("intrinsic_weight").get<double>();
  cfg.buffer_capacity = jc.at("buffer_capacity").get<std::int64_t>();
  cfg.dynamics_hidden = jc.at("dynamics_hidden").get<std::vector<int>>();
  cfg.error_hidden = jc.at("error_hidden").get<std::vector<int>>();
  cfg.hidden_activation = static_cast<Activation>(jc.at("hidden_activation").get<int>());
  cfg.dynamics_output = static_cast<Activation>(jc.at("dynamics_output").get<int>());

  LpmState state(j.at("obs_dim").get<int>(), j.at("action_count").get<int>(), cfg,
                 Rng(j.at("rng_root_seed").get<std::uint64_t>()));
  state.rng_.set_state(j.at("rng_state").get<std::array<std::uint64_t, 4>>());
  state.tau_ = j.at("tau").get<std::int64_t>();
  state.last_epsilon_ = j.at("last_epsilon").get<double>();
  state.dynamics_ = model_from_json(j.at("dynamics"));
  state.error_ = model_from_json(j.at("error"));
  adam_from_json(j.at("dynamics_adam"), state.dynamics_, state.dynamics_adam_);
  adam_from_json(j.at("error_adam"), state.error_, state.error_adam_);

  for (const auto& jt : j.at("transitions")) {
    state.transitions_.push({vector_from_json(jt.at("o")), jt.at("a").get<int>(),
                             vector_from_json(jt.at("o_next"))});
  }
  for (const auto& jr : j.at("errors")) {
    state.errors_.push({vector_from_json(jr.at("o")), jr.at("a").get<int>(),
                        jr.at("eps").get<double>(), jr.at("tau").get<std::int64_t>()});
  }
  return state;
}

void LpmState::save_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("checkpoint: cannot open " + path + " for writing");
  save(out);
}

LpmState LpmState::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("checkpoint: cannot open " + path);
  return load(in);
}

double combined_reward(double extrinsic, double intrinsic, double beta) {
  return extrinsic + beta * intrinsic;
}

}  // namespace lpm
