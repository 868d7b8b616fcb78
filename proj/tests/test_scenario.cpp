#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/errors.hpp"
#include "core/scenario.hpp"
#include "core/snapshot.hpp"

using namespace gch;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("gch_scenario_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const char* name) const { return (path / name).string(); }
};

const char* kQuickRun =
    "model.preset = camassa_holm\n"
    "grid.n = 64\n"
    "control.t_end = 0.1\n"
    "control.dt = 1e-3\n"
    "initial.kind = cosine_packet\n"
    "initial.amplitude = 0.5\n";

int count_lines(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(bool(in));
  int lines = 0;
  std::string line;
  while (std::getline(in, line)) ++lines;
  return lines;
}

bool tuple_near(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > 1e-9) return false;
  }
  return true;
}

bool has_tuple(const std::vector<LemmaTuple>& tuples, const std::string& check,
               const std::vector<double>& params) {
  for (const LemmaTuple& t : tuples) {
    if (t.check == check && tuple_near(t.params, params)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("a short run records per-step diagnostics and conserves I1") {
  ScenarioConfig cfg = parse_config(kQuickRun);
  ScenarioResult result = run_simulation(cfg);

  CHECK(result.status == AdvanceStatus::reached_t_end);
  REQUIRE(result.history.size() == 101);
  CHECK(result.history.front().t == 0.0);
  CHECK(result.history.front().dt_used == 0.0);
  CHECK(result.history[1].dt_used == 1e-3);
  CHECK(result.history.back().t == 0.1);
  CHECK(result.state.t == 0.1);
  for (std::size_t i = 1; i < result.history.size(); ++i) {
    CHECK(result.history[i].t > result.history[i - 1].t);
  }
  const double i1_0 = result.history.front().i1;
  const double drift = std::abs(result.history.back().i1 - i1_0);
  CHECK(drift <= 1e-9 * std::max(1.0, std::abs(i1_0)));
}

TEST_CASE("requested outputs land on disk") {
  TempDir dir;
  ScenarioConfig cfg = parse_config(
      std::string(kQuickRun) + "outputs.csv = " + dir.file("series.csv") +
      "\noutputs.snapshots = " + dir.file("run") + "\noutputs.cadence = 40\n");
  run_simulation(cfg);

  CHECK(fs::exists(dir.file("run_step00000040.gchs")));
  CHECK(fs::exists(dir.file("run_step00000080.gchs")));
  CHECK(!fs::exists(dir.file("run_step00000100.gchs")));  // not on cadence
  CHECK(fs::exists(dir.file("run_final.gchs")));

  SnapshotData final = read_snapshot(dir.file("run_final.gchs"));
  CHECK(final.state.t == 0.1);
  CHECK(final.k == 1);
  CHECK(final.p == 1);
  CHECK(final.b == 2.0);

  CHECK(count_lines(dir.file("series.csv")) == 102);  // header + 101 records
  std::ifstream csv(dir.file("series.csv"));
  std::string header;
  std::getline(csv, header);
  CHECK(header == csv_header());
}

TEST_CASE("resuming from a snapshot reproduces the uninterrupted run") {
  TempDir dir;
  ScenarioConfig cfg = parse_config(std::string(kQuickRun) +
                                    "outputs.snapshots = " + dir.file("run") +
                                    "\noutputs.cadence = 40\n");
  ScenarioResult full = run_simulation(cfg);

  ScenarioConfig resume_cfg = parse_config(kQuickRun);  // no outputs this time
  ScenarioResult tail =
      resume_simulation(dir.file("run_step00000040.gchs"), resume_cfg);

  CHECK(tail.status == AdvanceStatus::reached_t_end);
  REQUIRE(tail.history.size() == 61);  // the 40-step prefix already happened
  CHECK(tail.history.front().t == full.history[40].t);
  CHECK(tail.history.front().i1 == full.history[40].i1);
  REQUIRE(tail.state.u.values.size() == full.state.u.values.size());
  for (std::size_t i = 0; i < full.state.u.values.size(); ++i) {
    CHECK(tail.state.u.values[i] == full.state.u.values[i]);
  }
}

TEST_CASE("resume rejects configurations that contradict the snapshot") {
  TempDir dir;
  ScenarioConfig cfg = parse_config(std::string(kQuickRun) +
                                    "outputs.snapshots = " + dir.file("run") +
                                    "\noutputs.cadence = 40\n");
  run_simulation(cfg);
  const std::string snap = dir.file("run_step00000040.gchs");

  ScenarioConfig other_model = parse_config(
      "model.preset = novikov\ngrid.n = 64\ncontrol.t_end = 0.1\n"
      "control.dt = 1e-3\ninitial.kind = cosine_packet\n");
  CHECK_THROWS_AS(resume_simulation(snap, other_model), invalid_input);

  ScenarioConfig other_grid = parse_config(
      "model.preset = camassa_holm\ngrid.n = 128\ncontrol.t_end = 0.1\n"
      "control.dt = 1e-3\ninitial.kind = cosine_packet\n");
  CHECK_THROWS_AS(resume_simulation(snap, other_grid), invalid_input);

  ScenarioConfig done_already = parse_config(
      "model.preset = camassa_holm\ngrid.n = 64\ncontrol.t_end = 0.02\n"
      "control.dt = 1e-3\ninitial.kind = cosine_packet\n");
  CHECK_THROWS_AS(resume_simulation(snap, done_already), invalid_input);

  CHECK_THROWS_AS(resume_simulation(dir.file("absent.gchs"), cfg), io_failure);
}

TEST_CASE("the convergence study sees fourth-order time stepping") {
  ScenarioConfig cfg = parse_config(
      "model.preset = camassa_holm\n"
      "grid.n = 64\n"
      "control.t_end = 0.1\n"
      "control.dt = 0.02\n"
      "initial.amplitude = 1\n"
      "initial.width = 2\n");
  ConvergenceReport report = run_convergence(cfg, 2);

  CHECK(report.dts == std::vector<double>{0.02, 0.01});
  CHECK(report.grid_sizes == std::vector<int>{64, 128});
  CHECK(!report.degenerate);
  CHECK(report.temporal_errors[0] > report.temporal_errors[1]);
  CHECK(report.temporal_order > 3.2);
  CHECK(report.temporal_order < 4.8);
  CHECK(report.spatial_errors[0] >= report.spatial_errors[1]);
}

TEST_CASE("a flow at rest is reported as degenerate") {
  ScenarioConfig cfg = parse_config(
      "model.preset = camassa_holm\n"
      "grid.n = 64\n"
      "control.t_end = 0.1\n"
      "control.dt = 0.02\n"
      "initial.amplitude = 0\n"
      "initial.width = 2\n");
  ConvergenceReport report = run_convergence(cfg, 2);
  CHECK(report.degenerate);
  CHECK(report.temporal_order == 0.0);
  for (double e : report.temporal_errors) CHECK(e <= 1e-13);
  for (double e : report.spatial_errors) CHECK(e <= 1e-13);
}

TEST_CASE("the convergence study rejects unusable setups") {
  ScenarioConfig no_dt = parse_config(
      "model.preset = camassa_holm\ngrid.n = 64\ncontrol.t_end = 0.1\n"
      "initial.width = 2\n");
  CHECK_THROWS_AS(run_convergence(no_dt, 2), invalid_input);

  ScenarioConfig fine = parse_config(
      "model.preset = camassa_holm\ngrid.n = 64\ncontrol.t_end = 0.1\n"
      "control.dt = 0.02\ninitial.width = 2\n");
  CHECK_THROWS_AS(run_convergence(fine, 1), invalid_input);

  ScenarioConfig breaking = parse_config(
      "model.preset = degasperis_procesi\ngrid.n = 64\ncontrol.t_end = 0.1\n"
      "control.dt = 0.02\ninitial.amplitude = 2\ninitial.width = 2\n"
      "control.breaking_threshold = 0.5\n");
  CHECK_THROWS_AS(run_convergence(breaking, 2), overflow_detected);
}

TEST_CASE("the default lemma tuples enumerate the documented instantiations") {
  std::vector<LemmaTuple> tuples = default_lemma_tuples();
  CHECK(tuples.size() == 26);

  CHECK(has_tuple(tuples, "fractional_leibniz", {-0.4, 0.6}));
  CHECK(has_tuple(tuples, "fractional_leibniz", {-1.4, 2.6}));
  CHECK(has_tuple(tuples, "fractional_leibniz", {1.6, 2.6}));
  CHECK(has_tuple(tuples, "fractional_leibniz", {3.6, 4.6}));
  CHECK(has_tuple(tuples, "fractional_leibniz", {-0.4, 4.6}));

  CHECK(has_tuple(tuples, "commutator_lambda", {2.6, 0.0, 3.6}));
  CHECK(has_tuple(tuples, "commutator_lambda", {4.6, 0.0, 5.6}));
  // The roughest scale sits below the commutator hypothesis and is excluded.
  CHECK(!has_tuple(tuples, "commutator_lambda", {0.6, 0.0, 1.6}));

  for (double s : {1.6, 3.6, 5.6}) CHECK(has_tuple(tuples, "kato_ponce", {s}));
  for (double r : {0.6, 2.6, 4.6}) CHECK(has_tuple(tuples, "algebra", {r}));
  for (double r : {0.6, 2.6, 4.6}) {
    CHECK(has_tuple(tuples, "composition", {r}));
  }

  // Every default tuple must pass its own hypothesis filter.
  LemmaSuiteConfig suite;
  suite.sampler.n_samples = 100;
  suite.grid_n = 64;
  suite.tuples = tuples;
  std::vector<std::string> rejected;
  std::vector<RatioReport> reports = run_lemma_suite(suite, &rejected);
  CHECK(rejected.empty());
  CHECK(reports.size() == tuples.size());
  for (const RatioReport& r : reports) {
    CHECK(std::isfinite(r.max_ratio));
    CHECK(r.max_ratio > 0.0);
    CHECK(r.n_samples == 100);
  }
}

TEST_CASE("the lemma suite isolates rejected tuples and keeps order") {
  LemmaSuiteConfig suite;
  suite.sampler.n_samples = 100;
  suite.grid_n = 64;
  suite.tuples = {
      {"fractional_leibniz", {1.0, 2.0}, {}},
      {"frobnicate", {1.0}, {}},
      {"kato_ponce", {-1.0}, {}},
      {"algebra", {2.5}, {}},
      {"fractional_leibniz", {1.0}, {}},  // wrong arity
  };
  std::vector<std::string> rejected;
  std::vector<RatioReport> reports = run_lemma_suite(suite, &rejected);

  REQUIRE(reports.size() == 2);
  CHECK(reports[0].lemma_id == "fractional_leibniz");
  CHECK(reports[1].lemma_id == "algebra");
  REQUIRE(rejected.size() == 3);
  CHECK(rejected[0].find("frobnicate") != std::string::npos);
  CHECK(rejected[1].find("need r > 0") != std::string::npos);
  CHECK(rejected[2].find("takes (alpha, beta)") != std::string::npos);

  LemmaSuiteConfig empty = suite;
  empty.tuples.clear();
  std::vector<std::string> none;
  CHECK(run_lemma_suite(empty, &none).empty());
  CHECK(none.empty());
}

TEST_CASE("lemma suite runs are deterministic") {
  LemmaSuiteConfig suite;
  suite.sampler.n_samples = 100;
  suite.grid_n = 64;
  suite.tuples = {{"algebra", {2.5}, {}}};
  std::vector<RatioReport> a = run_lemma_suite(suite, nullptr);
  std::vector<RatioReport> b = run_lemma_suite(suite, nullptr);
  REQUIRE(a.size() == 1);
  CHECK(report_line(a[0]) == report_line(b[0]));
}
