#pragma once

#include <string>
#include <vector>

#include "model.hpp"
#include "stepper.hpp"

namespace gch {

// One sampled row of the conservation / growth instrumentation.
struct DiagnosticsRecord {
  double t = 0.0;
  double i1 = 0.0;              // ∫ u m dx, computed spectrally
  double i1_sobolev_sum = 0.0;  // Σ_j binom(k,j) |∂^j u|_L2²
  double hk_norm = 0.0;         // |u|_{H^k}
  double h2k_norm = 0.0;        // |u|_{H^2k}
  double hs_norm = 0.0;         // |u|_{H^s} at the configured monitor index
  double m_l2 = 0.0;            // |m|_L2 by physical-space quadrature
  double u_inf = 0.0;
  double ux_inf = 0.0;
  double di1_residual = 0.0;    // 2(p+1-b) ∫ u^p u_x m dx
  double dt_used = 0.0;         // step size that produced this state (0 initially)
};

// I1 = ∫ u m dx as the exactly nonnegative spectral sum L·Σ (1+ξ²)^k |c_j|².
double conserved_i1(const Field& u, const ModelParams& params);

// The integration-by-parts form Σ_{j=0..k} binom(k,j) |∂^j u|_L2²; agrees
// with conserved_i1 to roundoff.
double i1_sobolev_sum(const Field& u, const ModelParams& params);

// dI1/dt along the flow: 2(p+1-b) ∫ u^p u_x m dx, with a dealiased product.
// Exactly zero when b = p+1.
double di1_residual(const Field& u, const ModelParams& params);

// Assemble the full record for one state.
DiagnosticsRecord record(const SolverState& state, const ModelParams& params,
                         double s_monitor, double dt_used = 0.0);

// Outcome of an envelope check over a run history.  margins[i] is
// envelope(t_i) minus the monitored quantity at record i; the check passes
// when every margin is nonnegative.
struct EnvelopeReport {
  bool pass = true;
  long long first_violation = -1;  // record index of the first negative margin
  std::vector<double> margins;
  // Constants instantiated from the run, reported for inspection.
  double c_m = 0.0;    // sup over the run of max(|u|_inf, |u_x|_inf)
  double g_m = 0.0;    // sup of |g'| over [-c_m, c_m]
  double m_sup = 0.0;  // sup over the run of |u|_{H^k}
  double k_rate = 0.0;     // K in the differential inequality
  double l_offset = 0.0;   // L = K2²/4
  double c0 = 0.0;         // C0 = K/2
};

// Gronwall envelope for |m|_L2: checks m_l2(t)² ≤ (m0² + L/K)e^{Kt} − L/K
// with K = (p+2)C_M^p + 1 and L = ((p+2)·2·C_M^{p+1} + 2·G_M)²/4, constants
// taken from the observed run suprema.  Requires b = p+1.
EnvelopeReport m_growth_check(const std::vector<DiagnosticsRecord>& history,
                              const ModelParams& params, double m0_l2);

// Interpolation bound for |u|_{H^2k}: checks h2k_norm(t) against
// slack·(M + e^{C0 t} m0 + C1 + C2·Σ_j young_j) with C1, C2 and the Young
// constants assembled from the Gagliardo-Nirenberg splitting of the 2j-th
// derivatives, j = 0..k-1.  Requires b = p+1.
EnvelopeReport h2k_bound_check(const std::vector<DiagnosticsRecord>& history,
                               const ModelParams& params, double m0_l2,
                               double slack = 2.0);

// CSV serialization: fixed column order, full double precision.
std::string csv_header();
std::string csv_line(const DiagnosticsRecord& r);
void write_csv(const std::vector<DiagnosticsRecord>& history, const std::string& path);

}  // namespace gch
