#include "doctest.h"
#include "lpm/harness.hpp"
#include "lpm/metrics.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace {

namespace fs = std::filesystem;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string first_line(const std::string& text) {
  return text.substr(0, text.find('\n'));
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag)
      : path(fs::temp_directory_path() / ("lpmx_test_" + tag)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

lpm::RunConfig tiny_mnist(const std::string& out) {
  lpm::ConfigMap file{{"total_steps", "40"},   {"seeds", "1,2"},
                      {"explorers", "lpm,pe"}, {"lpm.queue_size", "10"},
                      {"out_dir", out},        {"lpm.dynamics_hidden", "16"},
                      {"lpm.error_hidden", "16"}, {"train.hidden", "16"},
                      {"parallel_cells", "2"}};
  return lpm::make_run_config("mnist_convergence", file, {});
}

lpm::RunConfig tiny_maze(const std::string& out) {
  lpm::ConfigMap file{{"total_steps", "400"},
                      {"seeds", "1"},
                      {"explorers", "lpm"},
                      {"noise_modes", "none,action_noise"},
                      {"lpm.dynamics_hidden", "16"},
                      {"lpm.error_hidden", "16"},
                      {"train.hidden", "16"},
                      {"log_every", "50"},
                      {"out_dir", out},
                      {"parallel_cells", "2"}};
  return lpm::make_run_config("maze_coverage", file, {});
}

}  // namespace

TEST_CASE("windowed abs mean and crossing step behave on a hand trace") {
  // |x| window-2 means: 1, .75, .4, .15, .05, .07, .03 -> < 0.1 from index 4 on
  const std::vector<double> x{1.0, -0.5, 0.3, 0.0, -0.1, 0.04, 0.02};
  const auto m = lpm::windowed_abs_mean(x, 2);
  CHECK(m[0] == doctest::Approx(1.0));
  CHECK(m[1] == doctest::Approx(0.75));
  CHECK(m[3] == doctest::Approx(0.15));
  CHECK(m[6] == doctest::Approx(0.03));
  CHECK(lpm::convergence_crossing_step(x, 2, 0.1) == 5);  // 1-based step
  CHECK(lpm::convergence_crossing_step(x, 2, 0.001) == -1);
  // an early sub-threshold window does not count if the trace rises again
  const std::vector<double> y{0.0, 0.0, 5.0, 0.0, 0.0};
  CHECK(lpm::convergence_crossing_step(y, 2, 0.1) == 5);
}

TEST_CASE("mnist runs are reproducible byte for byte") {
  TempDir a("mnist_a"), b("mnist_b");
  const auto ra = lpm::run_mnist_convergence(tiny_mnist(a.path.string()));
  const auto rb = lpm::run_mnist_convergence(tiny_mnist(b.path.string()));
  CHECK(slurp(ra.metrics_path) == slurp(rb.metrics_path));
  CHECK(first_line(slurp(ra.metrics_path)) == "# schema=mnist-convergence-v1");

  const auto table = lpm::read_metrics_csv(ra.metrics_path);
  CHECK(table.columns ==
        std::vector<std::string>{"seed", "step", "branch", "r_int", "r_ext", "epsilon",
                                 "explorer"});
  // 2 explorers x 2 seeds x 40 steps x 2 branches
  CHECK(table.rows.size() == 2 * 2 * 40 * 2);
  for (const auto v : table.numeric_column("r_ext")) CHECK(v == 0.0);
}

TEST_CASE("maze runs are reproducible and respect coverage invariants") {
  TempDir a("maze_a"), b("maze_b");
  const auto ra = lpm::run_maze_coverage(tiny_maze(a.path.string()));
  const auto rb = lpm::run_maze_coverage(tiny_maze(b.path.string()));
  CHECK(slurp(ra.metrics_path) == slurp(rb.metrics_path));

  const auto table = lpm::read_metrics_csv(ra.metrics_path);
  const int explorer_col = table.column_index("explorer");
  const int mode_col = table.column_index("noise_mode");

  // the random floor cell is added automatically
  std::set<std::string> explorers;
  for (const auto& row : table.rows) explorers.insert(row[explorer_col]);
  CHECK(explorers == std::set<std::string>{"lpm", "random"});

  // coverage is nondecreasing within a run and bounded by the state count
  lpm::GridMazeEnv env{lpm::MazeConfig{}};
  const auto cells = table.numeric_column("coverage_cells");
  const auto posedirs = table.numeric_column("coverage_posedirs");
  const auto steps = table.numeric_column("step");
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    CHECK(posedirs[i] <= env.state_count());
    CHECK(cells[i] <= env.cell_count());
    if (i > 0 && steps[i] > steps[i - 1] && table.rows[i][explorer_col] == table.rows[i - 1][explorer_col] &&
        table.rows[i][mode_col] == table.rows[i - 1][mode_col]) {
      CHECK(posedirs[i] >= posedirs[i - 1]);
      CHECK(cells[i] >= cells[i - 1]);
    }
  }
}

TEST_CASE("theorem verification exits clean, and dirty when corrupted") {
  TempDir ok("thm_ok"), bad("thm_bad");
  lpm::ConfigMap file{{"oracle.instances", "200"}, {"out_dir", ok.path.string()}};
  const auto good = lpm::run_theorem_verify(lpm::make_run_config("theorem_verify", file, {}));
  CHECK(good.exit_code == 0);
  CHECK(first_line(slurp(good.metrics_path)) == "# schema=theorem-verify-v1");

  lpm::ConfigMap corrupt{{"oracle.instances", "50"},
                         {"out_dir", bad.path.string()},
                         {"oracle.inject_corruption", "true"}};
  const auto dirty = lpm::run_theorem_verify(lpm::make_run_config("theorem_verify", corrupt, {}));
  CHECK(dirty.exit_code == 1);
  CHECK(fs::exists(bad.path / "counterexample_0.json"));
}

TEST_CASE("wall-clock budget aborts cleanly with partial results flagged") {
  TempDir dir("budget");
  auto cfg = tiny_maze(dir.path.string());
  cfg.total_steps = 2000000;  // would take far longer than the budget
  cfg.max_wall_seconds = 0.3;
  const auto result = lpm::run_maze_coverage(cfg);
  CHECK(result.partial);
  const std::string summary = slurp(result.summary_path);
  CHECK(summary.find(",1,") != std::string::npos);  // partial flag column
}

TEST_CASE("debug frames are dumped as valid PGM") {
  TempDir dir("frames");
  auto cfg = tiny_mnist(dir.path.string());
  cfg.debug_frames = true;
  cfg.total_steps = 5;
  cfg.seeds = {1};
  cfg.explorers = {"pe"};
  lpm::run_mnist_convergence(cfg);
  const std::string pgm = slurp((dir.path / "frames" / "anchor_det.pgm").string());
  CHECK(pgm.rfind("P5\n28 28\n255\n", 0) == 0);
  CHECK(pgm.size() == std::string("P5\n28 28\n255\n").size() + 784);
}
