#pragma once

#include <string>
#include <vector>

#include "config.hpp"
#include "diagnostics.hpp"
#include "inequalities.hpp"
#include "stepper.hpp"

namespace gch {

struct ScenarioResult {
  SolverState state;
  AdvanceStatus status = AdvanceStatus::reached_t_end;
  std::vector<DiagnosticsRecord> history;  // one record per step, t=0 first
};

// Advance the configured scenario to t_end (or breaking), recording a
// diagnostics record at every step.  Writes the CSV series when
// outputs.csv is set and a snapshot every outputs.cadence steps (plus the
// final state) when outputs.snapshots is set, named
// "<prefix>_step<NNNNNNNN>.gchs".  Numerical breaking is reported in the
// returned status, never as an exception; I/O problems throw io_failure.
ScenarioResult run_simulation(const ScenarioConfig& cfg);

// Continue a run from a saved state: the snapshot supplies (t, u) and the
// model identity (k, p, b); cfg supplies everything else and must carry the
// same (k, p, b).  The snapshot format does not store polynomial forcing
// coefficients, so forced runs must resume with the config they started
// with.  With a fixed dt this is bit-transparent: stepping continues the
// same dt sequence the uninterrupted run would have taken.
ScenarioResult resume_simulation(const std::string& snapshot_path,
                                 const ScenarioConfig& cfg);

struct ConvergenceReport {
  // Temporal study: dt halved per level, error measured at t_end against a
  // reference run at dt/2^(levels+1).
  std::vector<double> dts;
  std::vector<double> temporal_errors;  // max-norm against the reference
  double temporal_order = 0.0;          // mean of pairwise log2 ratios
  // Spatial study: N doubled per level, error measured against the next
  // doubling on the shared coarse nodes at a fixed small dt.
  std::vector<int> grid_sizes;
  std::vector<double> spatial_errors;
  // True when the flow is indistinguishable from rest (errors at rounding
  // level), in which case the orders mean nothing.
  bool degenerate = false;
};

// Richardson-style order study around the configured scenario.  cfg must
// use a fixed dt (the study halves it); levels >= 2.  Breaking anywhere in
// the study aborts with overflow_detected carrying the diagnosis.
ConvergenceReport run_convergence(const ScenarioConfig& cfg, int levels);

// One lemma-check instantiation: which check, its parameter tuple, and (for
// the composition check) the polynomial coefficients of F.
struct LemmaTuple {
  std::string check;  // fractional_leibniz | commutator_lambda | kato_ponce
                      // | composition | algebra
  std::vector<double> params;
  std::vector<double> g_coeffs;  // composition only

  bool operator==(const LemmaTuple&) const = default;
};

struct LemmaSuiteConfig {
  SamplerConfig sampler;           // n_samples >= 500 for the default suite
  int grid_n = 256;
  double grid_length = 6.283185307179586476925286766559;
  std::vector<LemmaTuple> tuples;  // empty list means: check nothing
};

// Every estimate instantiation the well-posedness argument uses, for
// Helmholtz degrees k in {1,2,3} at the smallest admissible regularity
// s = 2(k-1)+3/2+0.1: the fractional-Leibniz (alpha, beta) pairs from the
// Lipschitz estimates, the commutator tuple (s-1, 0, s), Kato-Ponce at
// r = s, the algebra property at r = s-1, and the composition estimate for
// u^p, p in {1,2,3}, at r = s-1.  Tuples whose hypotheses fail at a given k
// (all of them at k = 1 except the Leibniz pair (s-2, s-1)) are excluded,
// and duplicates across k are dropped.
std::vector<LemmaTuple> default_lemma_tuples();

// Run every valid tuple; invalid ones (hypothesis violations) are skipped,
// with a "check [params]: reason" note appended to *rejected when given.
// Reports come back in tuple order.
std::vector<RatioReport> run_lemma_suite(
    const LemmaSuiteConfig& cfg, std::vector<std::string>* rejected = nullptr);

}  // namespace gch
