/* gch — pseudospectral laboratory for the generalized Camassa-Holm family
 *
 *   m_t + m_x u^p + b m u^(p-1) u_x = -(g(u))_x + (b+1) u^p u_x,
 *   m = (1 - d_xx)^k u,  periodic in x.
 *
 * C interface to the shared library. All entry points are thread-safe with
 * respect to distinct handles; a handle must not be used from two threads at
 * once. Calls that can fail return a gch_status; on failure the thread-local
 * message from gch_last_error() describes what went wrong and any output
 * pointer is left untouched.
 */
#ifndef GCH_H
#define GCH_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gch_status {
  GCH_OK = 0,
  GCH_ERR_INTERNAL = 1, /* unexpected failure inside the library     */
  GCH_ERR_CONFIG = 2,   /* invalid configuration or argument         */
  GCH_BREAKING = 3,     /* wave breaking aborted the requested study */
  GCH_ERR_IO = 4        /* file could not be read or written         */
} gch_status;

/* Library version string, e.g. "1.0.0". Never NULL. */
const char* gch_version(void);

/* Message for the most recent failing call on this thread. Never NULL;
 * empty until a call fails. Valid until the next failing call. */
const char* gch_last_error(void);

/* ------------------------------------------------------------------ */
/* Simulation runs                                                    */
/* ------------------------------------------------------------------ */

/* A completed run: the final state plus one diagnostics record per step. */
typedef struct gch_result gch_result;

/* How a completed run ended. */
typedef enum gch_run_outcome {
  GCH_RUN_REACHED_T_END = 0,
  GCH_RUN_BREAKING = 1,          /* wave breaking detected; run stopped */
  GCH_RUN_MAX_STEPS_EXHAUSTED = 2
} gch_run_outcome;

/* Run the scenario described by a config (key = value lines; see README).
 * File outputs named in the config are written as a side effect. A run that
 * ends in wave breaking still returns GCH_OK: breaking is a reported
 * outcome, not a failure of the call. */
gch_status gch_run_config_text(const char* text, gch_result** out);
gch_status gch_run_config_file(const char* path, gch_result** out);

/* Continue a run from a snapshot file.
 *
 * config_text may be NULL: the model (k, p, b) and grid then come from the
 * snapshot header and every control takes its default, so t_end_override
 * must be positive. With config_text given, the config must agree with the
 * snapshot's model and grid; pass t_end_override <= 0 to keep the config's
 * own t_end. Resuming with the original fixed dt reproduces the
 * uninterrupted run bit for bit. */
gch_status gch_resume(const char* snapshot_path, const char* config_text,
                      double t_end_override, gch_result** out);

void gch_result_free(gch_result* result);

gch_run_outcome gch_result_outcome(const gch_result* result);
double gch_result_final_time(const gch_result* result);
/* Time at which breaking was detected; NaN when the run did not break. */
double gch_result_breaking_time(const gch_result* result);

/* Diagnostics records, one per step plus the initial state. */
int gch_result_record_count(const gch_result* result);
/* Number of doubles per record; matches the CSV column order. */
int gch_record_width(void);
/* Comma-separated CSV column names for the record layout. */
const char* gch_record_header(void);
/* Copy record `index` into out_values[0 .. width-1]; n_values must equal
 * gch_record_width(). */
gch_status gch_result_record(const gch_result* result, int index,
                             double* out_values, size_t n_values);

/* Final state access: grid size, box length, and the solution samples. */
int gch_result_grid_n(const gch_result* result);
double gch_result_grid_length(const gch_result* result);
gch_status gch_result_final_state(const gch_result* result, double* out_u,
                                  size_t n_values);

/* ------------------------------------------------------------------ */
/* Convergence studies                                                */
/* ------------------------------------------------------------------ */

typedef struct gch_convergence gch_convergence;

/* Richardson study: runs the config's scenario at levels halved time steps
 * against a finer reference, and at levels doubled grids against their own
 * refinements. The config must set a fixed control.dt. Wave breaking
 * anywhere in the study fails with GCH_BREAKING. */
gch_status gch_converge(const char* config_text, int levels,
                        gch_convergence** out);
void gch_convergence_free(gch_convergence* report);

int gch_convergence_levels(const gch_convergence* report);
gch_status gch_convergence_level(const gch_convergence* report, int index,
                                 double* dt, double* temporal_error,
                                 int* grid_n, double* spatial_error);
/* Mean observed order of the time stepper across the halvings. */
double gch_convergence_temporal_order(const gch_convergence* report);
/* 1 when every error sits at rounding level and the order is meaningless. */
int gch_convergence_degenerate(const gch_convergence* report);

/* ------------------------------------------------------------------ */
/* Inequality (lemma) checks                                          */
/* ------------------------------------------------------------------ */

typedef struct gch_lemma_reports gch_lemma_reports;

/* Run the default tuple set — every Sobolev-inequality instantiation the
 * well-posedness argument leans on for k = 1, 2, 3 — over seeded random
 * band-limited fields on a grid_n-point box of length 2*pi, rechecking each
 * worst ratio at double resolution. n_samples >= 100. */
gch_status gch_run_default_lemma_suite(uint64_t seed, int n_samples,
                                       int grid_n, gch_lemma_reports** out);
void gch_lemma_reports_free(gch_lemma_reports* reports);

int gch_lemma_report_count(const gch_lemma_reports* reports);
/* One-line summary: id, parameters, samples, worst ratio, refined ratio,
 * stability verdict. Valid while `reports` lives. */
const char* gch_lemma_report_line(const gch_lemma_reports* reports, int index);
/* 1 when the worst ratio moved by at most 5% under grid doubling. */
int gch_lemma_report_stable(const gch_lemma_reports* reports, int index);
double gch_lemma_report_max_ratio(const gch_lemma_reports* reports, int index);

/* Tuples rejected by their own hypotheses, with reasons. */
int gch_lemma_rejected_count(const gch_lemma_reports* reports);
const char* gch_lemma_rejected_note(const gch_lemma_reports* reports,
                                    int index);

/* ------------------------------------------------------------------ */
/* Model presets                                                      */
/* ------------------------------------------------------------------ */

int gch_preset_count(void);
/* Name of preset `index` in [0, gch_preset_count()), or NULL out of range. */
const char* gch_preset_name(int index);
gch_status gch_preset_describe(const char* name, int* k, int* p, double* b);

/* ------------------------------------------------------------------ */
/* Config utilities                                                   */
/* ------------------------------------------------------------------ */

/* Parse a config and hand back its canonical rendering (all defaults made
 * explicit). The returned string is freed with gch_string_free(). */
gch_status gch_render_config(const char* text, char** out_text);
void gch_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* GCH_H */
