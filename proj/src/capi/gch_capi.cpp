#include "gch/gch.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "core/config.hpp"
#include "core/diagnostics.hpp"
#include "core/errors.hpp"
#include "core/inequalities.hpp"
#include "core/model.hpp"
#include "core/scenario.hpp"
#include "core/snapshot.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

// Run `body`, translating exceptions into status codes and the thread-local
// error message.
template <typename Body>
gch_status guarded(Body&& body) {
  try {
    body();
    return GCH_OK;
  } catch (const gch::invalid_input& e) {
    set_error(e.what());
    return GCH_ERR_CONFIG;
  } catch (const gch::io_failure& e) {
    set_error(e.what());
    return GCH_ERR_IO;
  } catch (const gch::overflow_detected& e) {
    set_error(e.what());
    return GCH_BREAKING;
  } catch (const std::exception& e) {
    set_error(e.what());
    return GCH_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown failure");
    return GCH_ERR_INTERNAL;
  }
}

gch_status null_argument(const char* what) {
  set_error(std::string("null argument: ") + what);
  return GCH_ERR_CONFIG;
}

std::string slurp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw gch::io_failure("cannot open config: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw gch::io_failure("failed reading config: " + path);
  return buf.str();
}

constexpr int kRecordWidth = 11;

void flatten_record(const gch::DiagnosticsRecord& r, double* out) {
  out[0] = r.t;
  out[1] = r.i1;
  out[2] = r.i1_sobolev_sum;
  out[3] = r.hk_norm;
  out[4] = r.h2k_norm;
  out[5] = r.hs_norm;
  out[6] = r.m_l2;
  out[7] = r.u_inf;
  out[8] = r.ux_inf;
  out[9] = r.di1_residual;
  out[10] = r.dt_used;
}

}  // namespace

struct gch_result {
  gch::ScenarioResult result;
};

struct gch_convergence {
  gch::ConvergenceReport report;
};

struct gch_lemma_reports {
  std::vector<gch::RatioReport> reports;
  std::vector<std::string> lines;
  std::vector<std::string> rejected;
};

extern "C" {

const char* gch_version(void) { return "1.0.0"; }

const char* gch_last_error(void) { return g_last_error.c_str(); }

gch_status gch_run_config_text(const char* text, gch_result** out) {
  if (!text) return null_argument("text");
  if (!out) return null_argument("out");
  return guarded([&] {
    gch::ScenarioConfig cfg = gch::parse_config(text);
    *out = new gch_result{gch::run_simulation(cfg)};
  });
}

gch_status gch_run_config_file(const char* path, gch_result** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  return guarded([&] {
    gch::ScenarioConfig cfg = gch::parse_config(slurp_file(path));
    *out = new gch_result{gch::run_simulation(cfg)};
  });
}

gch_status gch_resume(const char* snapshot_path, const char* config_text,
                      double t_end_override, gch_result** out) {
  if (!snapshot_path) return null_argument("snapshot_path");
  if (!out) return null_argument("out");
  return guarded([&] {
    gch::ScenarioConfig cfg;
    if (config_text) {
      cfg = gch::parse_config(config_text);
      if (t_end_override > 0.0) cfg.control.t_end = t_end_override;
    } else {
      if (!(t_end_override > 0.0)) {
        throw gch::invalid_input(
            "resume without a config needs a positive t_end");
      }
      gch::SnapshotData snap = gch::read_snapshot(snapshot_path);
      cfg.model = gch::ModelParams{snap.k, snap.p, snap.b, {}};
      cfg.grid_n = snap.state.u.grid.n();
      cfg.grid_length = snap.state.u.grid.length();
      cfg.control.t_end = t_end_override;
      cfg.initial.center = cfg.grid_length / 2.0;
      cfg.monitor_s = gch::default_monitor_s(snap.k);
    }
    *out = new gch_result{gch::resume_simulation(snapshot_path, cfg)};
  });
}

void gch_result_free(gch_result* result) { delete result; }

gch_run_outcome gch_result_outcome(const gch_result* result) {
  switch (result->result.status) {
    case gch::AdvanceStatus::reached_t_end: return GCH_RUN_REACHED_T_END;
    case gch::AdvanceStatus::breaking: return GCH_RUN_BREAKING;
    case gch::AdvanceStatus::max_steps_exhausted:
      return GCH_RUN_MAX_STEPS_EXHAUSTED;
  }
  return GCH_RUN_REACHED_T_END;
}

double gch_result_final_time(const gch_result* result) {
  return result->result.state.t;
}

double gch_result_breaking_time(const gch_result* result) {
  return result->result.state.breaking_time.value_or(
      std::numeric_limits<double>::quiet_NaN());
}

int gch_result_record_count(const gch_result* result) {
  return static_cast<int>(result->result.history.size());
}

int gch_record_width(void) { return kRecordWidth; }

const char* gch_record_header(void) {
  static const std::string header = gch::csv_header();
  return header.c_str();
}

gch_status gch_result_record(const gch_result* result, int index,
                             double* out_values, size_t n_values) {
  if (!result) return null_argument("result");
  if (!out_values) return null_argument("out_values");
  return guarded([&] {
    if (n_values != kRecordWidth) {
      throw gch::invalid_input("record buffer must hold exactly " +
                               std::to_string(kRecordWidth) + " doubles");
    }
    if (index < 0 ||
        index >= static_cast<int>(result->result.history.size())) {
      throw gch::invalid_input("record index out of range");
    }
    flatten_record(result->result.history[index], out_values);
  });
}

int gch_result_grid_n(const gch_result* result) {
  return result->result.state.u.grid.n();
}

double gch_result_grid_length(const gch_result* result) {
  return result->result.state.u.grid.length();
}

gch_status gch_result_final_state(const gch_result* result, double* out_u,
                                  size_t n_values) {
  if (!result) return null_argument("result");
  if (!out_u) return null_argument("out_u");
  return guarded([&] {
    const std::vector<double>& u = result->result.state.u.values;
    if (n_values != u.size()) {
      throw gch::invalid_input("state buffer size does not match the grid");
    }
    std::memcpy(out_u, u.data(), u.size() * sizeof(double));
  });
}

gch_status gch_converge(const char* config_text, int levels,
                        gch_convergence** out) {
  if (!config_text) return null_argument("config_text");
  if (!out) return null_argument("out");
  return guarded([&] {
    gch::ScenarioConfig cfg = gch::parse_config(config_text);
    *out = new gch_convergence{gch::run_convergence(cfg, levels)};
  });
}

void gch_convergence_free(gch_convergence* report) { delete report; }

int gch_convergence_levels(const gch_convergence* report) {
  return static_cast<int>(report->report.dts.size());
}

gch_status gch_convergence_level(const gch_convergence* report, int index,
                                 double* dt, double* temporal_error,
                                 int* grid_n, double* spatial_error) {
  if (!report) return null_argument("report");
  return guarded([&] {
    const gch::ConvergenceReport& r = report->report;
    if (index < 0 || index >= static_cast<int>(r.dts.size())) {
      throw gch::invalid_input("level index out of range");
    }
    if (dt) *dt = r.dts[index];
    if (temporal_error) *temporal_error = r.temporal_errors[index];
    if (grid_n) *grid_n = r.grid_sizes[index];
    if (spatial_error) *spatial_error = r.spatial_errors[index];
  });
}

double gch_convergence_temporal_order(const gch_convergence* report) {
  return report->report.temporal_order;
}

int gch_convergence_degenerate(const gch_convergence* report) {
  return report->report.degenerate ? 1 : 0;
}

gch_status gch_run_default_lemma_suite(uint64_t seed, int n_samples,
                                       int grid_n, gch_lemma_reports** out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    gch::LemmaSuiteConfig suite;
    suite.sampler.seed = seed;
    suite.sampler.n_samples = n_samples;
    suite.grid_n = grid_n;
    suite.grid_length = 2.0 * std::numbers::pi;
    suite.tuples = gch::default_lemma_tuples();

    auto reports = new gch_lemma_reports;
    reports->reports = gch::run_lemma_suite(suite, &reports->rejected);
    for (const gch::RatioReport& r : reports->reports) {
      reports->lines.push_back(gch::report_line(r));
    }
    *out = reports;
  });
}

void gch_lemma_reports_free(gch_lemma_reports* reports) { delete reports; }

int gch_lemma_report_count(const gch_lemma_reports* reports) {
  return static_cast<int>(reports->reports.size());
}

const char* gch_lemma_report_line(const gch_lemma_reports* reports,
                                  int index) {
  if (index < 0 || index >= static_cast<int>(reports->lines.size())) {
    return nullptr;
  }
  return reports->lines[index].c_str();
}

int gch_lemma_report_stable(const gch_lemma_reports* reports, int index) {
  if (index < 0 || index >= static_cast<int>(reports->reports.size())) {
    return 0;
  }
  return reports->reports[index].stable ? 1 : 0;
}

double gch_lemma_report_max_ratio(const gch_lemma_reports* reports,
                                  int index) {
  if (index < 0 || index >= static_cast<int>(reports->reports.size())) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return reports->reports[index].max_ratio;
}

int gch_lemma_rejected_count(const gch_lemma_reports* reports) {
  return static_cast<int>(reports->rejected.size());
}

const char* gch_lemma_rejected_note(const gch_lemma_reports* reports,
                                    int index) {
  if (index < 0 || index >= static_cast<int>(reports->rejected.size())) {
    return nullptr;
  }
  return reports->rejected[index].c_str();
}

int gch_preset_count(void) {
  static const std::vector<std::string> names = gch::preset_names();
  return static_cast<int>(names.size());
}

const char* gch_preset_name(int index) {
  static const std::vector<std::string> names = gch::preset_names();
  if (index < 0 || index >= static_cast<int>(names.size())) return nullptr;
  return names[index].c_str();
}

gch_status gch_preset_describe(const char* name, int* k, int* p, double* b) {
  if (!name) return null_argument("name");
  return guarded([&] {
    gch::ModelParams mp = gch::preset_params(name);
    if (k) *k = mp.k;
    if (p) *p = mp.p;
    if (b) *b = mp.b;
  });
}

gch_status gch_render_config(const char* text, char** out_text) {
  if (!text) return null_argument("text");
  if (!out_text) return null_argument("out_text");
  return guarded([&] {
    std::string rendered = gch::render_config(gch::parse_config(text));
    char* copy = new char[rendered.size() + 1];
    std::memcpy(copy, rendered.c_str(), rendered.size() + 1);
    *out_text = copy;
  });
}

void gch_string_free(char* text) { delete[] text; }

}  // extern "C"
