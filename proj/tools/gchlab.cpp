// gchlab — command-line front end for the gch shared library.
//
// Subcommands: run, resume, converge, lemmas, presets, render.
// Exit codes: 0 success, 2 bad configuration or arguments, 3 wave breaking,
// 4 file I/O failure, 1 internal failure.

#include <CLI11.hpp>
#include <gch/gch.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

int exit_code_for(gch_status status) {
  switch (status) {
    case GCH_OK: return 0;
    case GCH_ERR_CONFIG: return 2;
    case GCH_BREAKING: return 3;
    case GCH_ERR_IO: return 4;
    case GCH_ERR_INTERNAL: break;
  }
  return 1;
}

int fail(gch_status status) {
  std::fprintf(stderr, "error: %s\n", gch_last_error());
  return exit_code_for(status);
}

bool slurp(const std::string& path, std::string* out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) return false;
  *out = buf.str();
  return true;
}

// Print the run summary and translate its outcome into an exit code.
int finish_run(gch_result* result) {
  const int records = gch_result_record_count(result);
  std::vector<double> first(gch_record_width()), last(gch_record_width());
  gch_result_record(result, 0, first.data(), first.size());
  gch_result_record(result, records - 1, last.data(), last.size());

  // Record layout: t, i1, ... (see gch_record_header()).
  std::printf("steps: %d\n", records - 1);
  std::printf("final time: %.10g\n", gch_result_final_time(result));
  std::printf("I1: initial %.12g, drift %.3e\n", first[1],
              std::abs(last[1] - first[1]));
  std::printf("max |u| = %.6g, max |u_x| = %.6g\n", last[7], last[8]);

  switch (gch_result_outcome(result)) {
    case GCH_RUN_REACHED_T_END:
      return 0;
    case GCH_RUN_BREAKING:
      std::printf("wave breaking detected at t = %.10g\n",
                  gch_result_breaking_time(result));
      return 3;
    case GCH_RUN_MAX_STEPS_EXHAUSTED:
      std::fprintf(stderr,
                   "error: step budget exhausted before reaching t_end; "
                   "raise control.max_steps\n");
      return 2;
  }
  return 1;
}

int cmd_run(const std::string& config_path) {
  gch_result* result = nullptr;
  gch_status status = gch_run_config_file(config_path.c_str(), &result);
  if (status != GCH_OK) return fail(status);
  int code = finish_run(result);
  gch_result_free(result);
  return code;
}

int cmd_resume(const std::string& snapshot_path,
               const std::string& config_path, double t_end) {
  std::string config_text;
  const char* config_arg = nullptr;
  if (!config_path.empty()) {
    if (!slurp(config_path, &config_text)) {
      std::fprintf(stderr, "error: cannot read config: %s\n",
                   config_path.c_str());
      return 4;
    }
    config_arg = config_text.c_str();
  }
  gch_result* result = nullptr;
  gch_status status =
      gch_resume(snapshot_path.c_str(), config_arg, t_end, &result);
  if (status != GCH_OK) return fail(status);
  int code = finish_run(result);
  gch_result_free(result);
  return code;
}

int cmd_converge(const std::string& config_path, int levels) {
  std::string config_text;
  if (!slurp(config_path, &config_text)) {
    std::fprintf(stderr, "error: cannot read config: %s\n",
                 config_path.c_str());
    return 4;
  }
  gch_convergence* report = nullptr;
  gch_status status = gch_converge(config_text.c_str(), levels, &report);
  if (status != GCH_OK) return fail(status);

  for (int i = 0; i < gch_convergence_levels(report); ++i) {
    double dt = 0.0, temporal = 0.0, spatial = 0.0;
    int grid_n = 0;
    gch_convergence_level(report, i, &dt, &temporal, &grid_n, &spatial);
    std::printf("level %d: dt=%.6e temporal_err=%.6e | N=%d spatial_err=%.6e\n",
                i, dt, temporal, grid_n, spatial);
  }
  if (gch_convergence_degenerate(report)) {
    std::printf("degenerate study: all errors at rounding level, "
                "no meaningful order\n");
  } else {
    std::printf("observed temporal order: %.3f\n",
                gch_convergence_temporal_order(report));
  }
  gch_convergence_free(report);
  return 0;
}

int cmd_lemmas(std::uint64_t seed, int samples, int grid_n) {
  gch_lemma_reports* reports = nullptr;
  gch_status status =
      gch_run_default_lemma_suite(seed, samples, grid_n, &reports);
  if (status != GCH_OK) return fail(status);

  const int count = gch_lemma_report_count(reports);
  int stable = 0;
  for (int i = 0; i < count; ++i) {
    std::printf("%s\n", gch_lemma_report_line(reports, i));
    stable += gch_lemma_report_stable(reports, i);
  }
  for (int i = 0; i < gch_lemma_rejected_count(reports); ++i) {
    std::printf("rejected: %s\n", gch_lemma_rejected_note(reports, i));
  }
  std::printf("summary: %d checks, %d stable, %d rejected\n", count, stable,
              gch_lemma_rejected_count(reports));
  gch_lemma_reports_free(reports);
  return 0;
}

int cmd_presets() {
  for (int i = 0; i < gch_preset_count(); ++i) {
    const char* name = gch_preset_name(i);
    int k = 0, p = 0;
    double b = 0.0;
    gch_preset_describe(name, &k, &p, &b);
    std::printf("%s: k=%d p=%d b=%g\n", name, k, p, b);
  }
  return 0;
}

int cmd_render(const std::string& config_path) {
  std::string config_text;
  if (!slurp(config_path, &config_text)) {
    std::fprintf(stderr, "error: cannot read config: %s\n",
                 config_path.c_str());
    return 4;
  }
  char* rendered = nullptr;
  gch_status status = gch_render_config(config_text.c_str(), &rendered);
  if (status != GCH_OK) return fail(status);
  std::fputs(rendered, stdout);
  gch_string_free(rendered);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Pseudospectral simulation and verification laboratory for the "
      "generalized Camassa-Holm equation family"};
  app.set_version_flag("--version", std::string(gch_version()));
  app.require_subcommand(1);

  std::string config_path, snapshot_path, resume_config;
  double t_end = 0.0;
  int levels = 3;
  int samples = 500;
  int grid_n = 256;
  std::uint64_t seed = 1;

  CLI::App* run = app.add_subcommand("run", "Run a scenario config");
  run->add_option("config", config_path, "config file")->required();

  CLI::App* resume =
      app.add_subcommand("resume", "Continue a run from a snapshot file");
  resume->add_option("snapshot", snapshot_path, "snapshot file")->required();
  resume->add_option("--config", resume_config,
                     "config supplying the controls (defaults come from the "
                     "snapshot otherwise)");
  resume->add_option("--t-end", t_end,
                     "new end time (required without --config)");

  CLI::App* converge = app.add_subcommand(
      "converge", "Richardson study: halve dt and double N against references");
  converge->add_option("config", config_path, "config file (fixed control.dt)")
      ->required();
  converge->add_option("--levels", levels, "number of refinement levels")
      ->check(CLI::Range(2, 12));

  CLI::App* lemmas = app.add_subcommand(
      "lemmas", "Check the Sobolev inequality suite on random fields");
  lemmas->add_option("--seed", seed, "sampler seed");
  lemmas->add_option("--samples", samples, "fields per check (>= 100)");
  lemmas->add_option("--grid-n", grid_n, "grid size (power of two)");

  app.add_subcommand("presets", "List the named model presets");

  CLI::App* render = app.add_subcommand(
      "render", "Print a config in canonical form with defaults made explicit");
  render->add_option("config", config_path, "config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // bad command lines are configuration errors
  }

  if (run->parsed()) return cmd_run(config_path);
  if (resume->parsed()) return cmd_resume(snapshot_path, resume_config, t_end);
  if (converge->parsed()) return cmd_converge(config_path, levels);
  if (lemmas->parsed()) return cmd_lemmas(seed, samples, grid_n);
  if (render->parsed()) return cmd_render(config_path);
  return cmd_presets();
}
