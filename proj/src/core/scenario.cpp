#include "scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "initial.hpp"
#include "snapshot.hpp"
#include "spectral.hpp"

namespace gch {

namespace {

std::string snapshot_name(const std::string& prefix, long long step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "_step%08lld.gchs", step);
  return prefix + buf;
}

// Drive the state to t_end, recording a diagnostics record per step and
// honoring the output spec.
ScenarioResult drive(SolverState st, const ScenarioConfig& cfg) {
  ScenarioResult result{std::move(st), AdvanceStatus::reached_t_end, {}};
  const bool snapshots = !cfg.outputs.snapshot_path.empty();

  Observer observer = [&](const SolverState& s, double dt_used) {
    result.history.push_back(record(s, cfg.model, cfg.monitor_s, dt_used));
    if (snapshots && s.step > 0 &&
        s.step % cfg.outputs.snapshot_cadence == 0) {
      write_snapshot(s, cfg.model,
                     snapshot_name(cfg.outputs.snapshot_path, s.step));
    }
  };

  result.status = advance(result.state, cfg.model, cfg.control, observer, 1);

  if (snapshots) {
    write_snapshot(result.state, cfg.model,
                   cfg.outputs.snapshot_path + "_final.gchs");
  }
  if (!cfg.outputs.csv_path.empty()) {
    write_csv(result.history, cfg.outputs.csv_path);
  }
  return result;
}

Field restrict_to(const Field& fine, const GridSpec& coarse) {
  const int ratio = fine.grid.n() / coarse.n();
  Field out = make_field(coarse);
  for (int i = 0; i < coarse.n(); ++i) {
    out.values[i] = fine.values[static_cast<std::size_t>(i) * ratio];
  }
  return out;
}

double max_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    m = std::max(m, std::abs(a.values[i] - b.values[i]));
  }
  return m;
}

// Advance initial data to t_end with a fixed dt; breaking aborts the study.
Field evolved(const Field& u0, const ScenarioConfig& cfg, double dt) {
  SolverState st{0.0, u0, 0, false, {}};
  StepControl control = cfg.control;
  control.dt = dt;
  AdvanceStatus status = advance(st, cfg.model, control);
  if (status == AdvanceStatus::breaking) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "convergence study aborted: breaking at t = %.6g "
                  "(dt = %.3e, N = %d)",
                  st.breaking_time.value_or(st.t), dt, u0.grid.n());
    throw overflow_detected(buf);
  }
  if (status != AdvanceStatus::reached_t_end) {
    throw invalid_input(
        "convergence study needs max_steps large enough to reach t_end");
  }
  return st.u;
}

bool leibniz_tuple_valid(double alpha, double beta) {
  return -beta < alpha && alpha <= beta && beta != 0.5;
}

bool commutator_tuple_valid(double n, double s_tilde, double sigma) {
  return n > 0.0 && s_tilde >= 0.0 && 1.5 < s_tilde + n &&
         s_tilde + n <= sigma;
}

bool tuple_close(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > 1e-9) return false;
  }
  return true;
}

std::string tuple_label(const LemmaTuple& t) {
  std::string out = t.check + " [";
  char buf[40];
  for (std::size_t i = 0; i < t.params.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s%.6g", i ? ", " : "", t.params[i]);
    out += buf;
  }
  return out + "]";
}

}  // namespace

ScenarioResult run_simulation(const ScenarioConfig& cfg) {
  cfg.validate();
  Field u0 = make_initial(cfg.initial, cfg.grid());
  return drive(SolverState{0.0, std::move(u0), 0, false, {}}, cfg);
}

ScenarioResult resume_simulation(const std::string& snapshot_path,
                                 const ScenarioConfig& cfg) {
  cfg.validate();
  SnapshotData snap = read_snapshot(snapshot_path);
  if (snap.k != cfg.model.k || snap.p != cfg.model.p ||
      snap.b != cfg.model.b) {
    throw invalid_input(
        "snapshot model (k, p, b) does not match the resume config");
  }
  if (!(snap.state.u.grid == cfg.grid())) {
    throw invalid_input("snapshot grid does not match the resume config");
  }
  require_finite(snap.state.u, "resume state");
  if (snap.state.t >= cfg.control.t_end) {
    throw invalid_input(
        "snapshot time is already at or past control.t_end; nothing to run");
  }
  return drive(std::move(snap.state), cfg);
}

ConvergenceReport run_convergence(const ScenarioConfig& cfg, int levels) {
  cfg.validate();
  if (levels < 2) {
    throw invalid_input("convergence study needs at least 2 levels");
  }
  if (!cfg.control.dt) {
    throw invalid_input("convergence study needs a fixed control.dt to halve");
  }

  ConvergenceReport report;
  const double dt0 = *cfg.control.dt;
  const double dt_ref = dt0 / std::pow(2.0, levels + 1);

  // Temporal study on the configured grid.
  Field u0 = make_initial(cfg.initial, cfg.grid());
  Field u_ref = evolved(u0, cfg, dt_ref);
  for (int level = 0; level < levels; ++level) {
    double dt = dt0 / std::pow(2.0, level);
    report.dts.push_back(dt);
    report.temporal_errors.push_back(max_diff(evolved(u0, cfg, dt), u_ref));
  }

  // Spatial study: each N against its own doubling, all at the reference dt.
  std::vector<Field> states;
  for (int level = 0; level <= levels; ++level) {
    GridSpec grid(cfg.grid_n << level, cfg.grid_length);
    states.push_back(evolved(make_initial(cfg.initial, grid), cfg, dt_ref));
  }
  for (int level = 0; level < levels; ++level) {
    report.grid_sizes.push_back(states[level].grid.n());
    report.spatial_errors.push_back(max_diff(
        states[level], restrict_to(states[level + 1], states[level].grid)));
  }

  // A flow indistinguishable from rest makes every error a rounding residue
  // and the fitted order meaningless.
  const double scale = std::max(1.0, max_abs(u_ref));
  const double floor = 1e-13 * scale;
  bool all_tiny = true;
  for (double e : report.temporal_errors) all_tiny = all_tiny && e <= floor;
  for (double e : report.spatial_errors) all_tiny = all_tiny && e <= floor;
  report.degenerate = all_tiny;

  if (!report.degenerate) {
    double sum = 0.0;
    for (int level = 0; level + 1 < levels; ++level) {
      double hi = std::max(report.temporal_errors[level], 1e-300);
      double lo = std::max(report.temporal_errors[level + 1], 1e-300);
      sum += std::log2(hi / lo);
    }
    report.temporal_order = sum / std::max(1, levels - 1);
  }
  return report;
}

std::vector<LemmaTuple> default_lemma_tuples() {
  std::vector<LemmaTuple> out;
  auto add = [&out](LemmaTuple t) {
    for (const LemmaTuple& have : out) {
      if (have.check == t.check && tuple_close(have.params, t.params) &&
          have.g_coeffs == t.g_coeffs) {
        return;
      }
    }
    out.push_back(std::move(t));
  };

  for (int k = 1; k <= 3; ++k) {
    const double s = 2.0 * k - 0.4;

    std::vector<std::pair<double, double>> pairs = {
        {s - 2 * k, s - 2},
        {s - 2 * k - 1, s - 1},
        {s - 2, s - 1},
        {s - 2 * k, s - 1},
    };
    for (int m = 1; m <= k; ++m) {
      for (int j = 2; j <= 2 * m - 1; ++j) {
        pairs.emplace_back(s - 2 * k, s - 2 * m + j - 1);
        pairs.emplace_back(s - 2 * k, s - j - 1);
      }
    }
    for (auto [alpha, beta] : pairs) {
      if (leibniz_tuple_valid(alpha, beta)) {
        add({"fractional_leibniz", {alpha, beta}, {}});
      }
    }

    if (commutator_tuple_valid(s - 1, 0.0, s)) {
      add({"commutator_lambda", {s - 1, 0.0, s}, {}});
    }
    add({"kato_ponce", {s}, {}});
    add({"algebra", {s - 1}, {}});
    for (int p = 1; p <= 3; ++p) {
      std::vector<double> coeffs(p, 0.0);
      coeffs.back() = 1.0;  // F(u) = u^p
      add({"composition", {s - 1}, std::move(coeffs)});
    }
  }
  return out;
}

std::vector<RatioReport> run_lemma_suite(const LemmaSuiteConfig& cfg,
                                         std::vector<std::string>* rejected) {
  cfg.sampler.validate();
  GridSpec grid(cfg.grid_n, cfg.grid_length);

  std::vector<RatioReport> reports;
  for (const LemmaTuple& tuple : cfg.tuples) {
    try {
      const auto& p = tuple.params;
      if (tuple.check == "fractional_leibniz") {
        if (p.size() != 2) {
          throw invalid_input("fractional_leibniz takes (alpha, beta)");
        }
        reports.push_back(
            check_fractional_leibniz(p[0], p[1], cfg.sampler, grid));
      } else if (tuple.check == "commutator_lambda") {
        if (p.size() != 3) {
          throw invalid_input("commutator_lambda takes (n, s_tilde, sigma)");
        }
        reports.push_back(
            check_commutator_lambda(p[0], p[1], p[2], cfg.sampler, grid));
      } else if (tuple.check == "kato_ponce") {
        if (p.size() != 1) throw invalid_input("kato_ponce takes (r)");
        reports.push_back(check_kato_ponce(p[0], cfg.sampler, grid));
      } else if (tuple.check == "composition") {
        if (p.size() != 1) throw invalid_input("composition takes (r)");
        reports.push_back(
            check_composition(tuple.g_coeffs, p[0], cfg.sampler, grid));
      } else if (tuple.check == "algebra") {
        if (p.size() != 1) throw invalid_input("algebra takes (r)");
        reports.push_back(check_algebra(p[0], cfg.sampler, grid));
      } else {
        throw invalid_input("unknown check '" + tuple.check + "'");
      }
    } catch (const invalid_input& e) {
      if (rejected) {
        rejected->push_back(tuple_label(tuple) + ": " + e.what());
      }
    }
  }
  return reports;
}

}  // namespace gch
