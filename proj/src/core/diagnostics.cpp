#include "diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "errors.hpp"
#include "spectral.hpp"

namespace gch {

namespace {

double binom(int n, int j) {
  double r = 1.0;
  for (int i = 1; i <= j; ++i) r = r * double(n - j + i) / double(i);
  return r;
}

// sup of |g'(z)| over [-bound, bound] for g(u) = sum_i coeffs[i] u^(i+1),
// taken as a dense-sample maximum (g' is a low-degree polynomial).
double sup_g_prime(const std::vector<double>& coeffs, double bound) {
  if (coeffs.empty()) return 0.0;
  auto gp_abs = [&](double z) {
    double acc = 0.0, zp = 1.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      acc += double(i + 1) * coeffs[i] * zp;
      zp *= z;
    }
    return std::fabs(acc);
  };
  const int samples = 4096;
  double best = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double z = -bound + 2.0 * bound * double(i) / double(samples);
    best = std::max(best, gp_abs(z));
  }
  return best;
}

struct GrowthConstants {
  double c_m = 0.0;
  double g_m = 0.0;
  double m_sup = 0.0;
  double k_rate = 0.0;
  double l_offset = 0.0;
  double c0 = 0.0;
};

// Constants of the differential inequality d|m|²/dt ≤ K|m|² + L, instantiated
// from the observed run suprema: C_M = sup max(|u|_inf, |u_x|_inf),
// K1 = (p+2)C_M^p, K2 = 2(p+2)C_M^{p+1} + 2 G_M, K = K1 + 1, L = K2²/4,
// C0 = K/2.  The two embedding constants are normalized to 1 under this
// artifact's norm convention.
GrowthConstants observed_constants(const std::vector<DiagnosticsRecord>& history,
                                   const ModelParams& params) {
  if (history.empty()) throw invalid_input("envelope check needs a nonempty history");
  GrowthConstants g;
  for (const auto& r : history) {
    g.c_m = std::max({g.c_m, r.u_inf, r.ux_inf});
    g.m_sup = std::max(g.m_sup, r.hk_norm);
  }
  g.g_m = sup_g_prime(params.g_coeffs, g.c_m);
  const double p2 = double(params.p + 2);
  const double k1 = p2 * std::pow(g.c_m, params.p);
  const double k2 = 2.0 * p2 * std::pow(g.c_m, params.p + 1) + 2.0 * g.g_m;
  g.k_rate = k1 + 1.0;
  g.l_offset = k2 * k2 / 4.0;
  g.c0 = g.k_rate / 2.0;
  return g;
}

void require_conservative(const ModelParams& params, const char* what) {
  params.validate();
  if (params.b != double(params.p + 1))
    throw invalid_input(std::string(what) + " assumes b = p+1");
}

void fill_constants(EnvelopeReport& rep, const GrowthConstants& g) {
  rep.c_m = g.c_m;
  rep.g_m = g.g_m;
  rep.m_sup = g.m_sup;
  rep.k_rate = g.k_rate;
  rep.l_offset = g.l_offset;
  rep.c0 = g.c0;
}

void push_margin(EnvelopeReport& rep, double margin) {
  if (margin < 0.0 && rep.first_violation < 0) {
    rep.pass = false;
    rep.first_violation = (long long)rep.margins.size();
  }
  rep.margins.push_back(margin);
}

}  // namespace

double conserved_i1(const Field& u, const ModelParams& params) {
  params.validate();
  require_finite(u, "diagnostics input");
  const Spectrum s = forward_transform(u);
  const int n = u.grid.n();
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double xi = u.grid.wavenumber(i);
    double weight = 1.0;
    for (int j = 0; j < params.k; ++j) weight *= 1.0 + xi * xi;
    acc += weight * std::norm(s.coeffs[i]);
  }
  return u.grid.length() * acc;
}

double i1_sobolev_sum(const Field& u, const ModelParams& params) {
  params.validate();
  require_finite(u, "diagnostics input");
  double acc = 0.0;
  for (int j = 0; j <= params.k; ++j) {
    const double nrm = (j == 0) ? lp_norm(u, 2.0) : lp_norm(derivative(u, j), 2.0);
    acc += binom(params.k, j) * nrm * nrm;
  }
  return acc;
}

double di1_residual(const Field& u, const ModelParams& params) {
  params.validate();
  require_finite(u, "diagnostics input");
  const double coeff = 2.0 * (double(params.p + 1) - params.b);
  if (coeff == 0.0) return 0.0;
  std::vector<Field> factors(params.p, u);
  factors.push_back(derivative(u, 1));
  const Field advect = dealiased_product(factors, params.p + 1);
  return coeff * inner_product(advect, momentum(u, params));
}

DiagnosticsRecord record(const SolverState& state, const ModelParams& params,
                         double s_monitor, double dt_used) {
  params.validate();
  require_finite(state.u, "diagnostics input");
  DiagnosticsRecord r;
  r.t = state.t;
  r.i1 = conserved_i1(state.u, params);
  r.i1_sobolev_sum = i1_sobolev_sum(state.u, params);
  r.hk_norm = sobolev_norm(state.u, double(params.k));
  r.h2k_norm = sobolev_norm(state.u, 2.0 * double(params.k));
  r.hs_norm = sobolev_norm(state.u, s_monitor);
  r.m_l2 = lp_norm(momentum(state.u, params), 2.0);
  r.u_inf = max_abs(state.u);
  r.ux_inf = max_abs(derivative(state.u, 1));
  r.di1_residual = di1_residual(state.u, params);
  r.dt_used = dt_used;
  return r;
}

EnvelopeReport m_growth_check(const std::vector<DiagnosticsRecord>& history,
                              const ModelParams& params, double m0_l2) {
  require_conservative(params, "the |m|_L2 growth envelope");
  const GrowthConstants g = observed_constants(history, params);
  EnvelopeReport rep;
  fill_constants(rep, g);
  rep.margins.reserve(history.size());
  const double offset = g.l_offset / g.k_rate;  // k_rate >= 1
  for (const auto& r : history) {
    // (m0² + L/K)e^{Kt} − L/K, arranged so the t = 0 margin is exactly
    // m0² − m(0)² instead of a catastrophic cancellation against L/K.
    const double envelope = m0_l2 * m0_l2 * std::exp(g.k_rate * r.t) +
                            offset * std::expm1(g.k_rate * r.t);
    push_margin(rep, envelope - r.m_l2 * r.m_l2);
  }
  return rep;
}

EnvelopeReport h2k_bound_check(const std::vector<DiagnosticsRecord>& history,
                               const ModelParams& params, double m0_l2,
                               double slack) {
  require_conservative(params, "the H^2k interpolation bound");
  if (slack < 0.0) throw invalid_input("slack factor must be nonnegative");
  const GrowthConstants g = observed_constants(history, params);

  // Split |d^2j u|_L2, j = 0..k-1: low derivatives (2j <= k) are bounded by
  // M outright; high ones interpolate between H^k and d^2k with exponent
  // alpha_j = (2j-k)/k and get absorbed by Young's inequality.
  double c1 = 0.0, c2 = 0.0;
  std::vector<double> alphas;
  for (int j = 0; j < params.k; ++j) {
    if (2 * j <= params.k) {
      c1 += binom(params.k, j) * g.m_sup;
    } else {
      const double alpha = double(2 * j - params.k) / double(params.k);
      alphas.push_back(alpha);
      c2 += binom(params.k, j) * std::pow(g.m_sup, 1.0 - alpha);
    }
  }
  double young_sum = 0.0;
  if (!alphas.empty() && c2 > 0.0) {
    // eps_j chosen uniformly so that c2 * sum eps_j = 1/4 < 1/2, as the
    // absorption step requires; the Young remainder for N^alpha <= eps N + C
    // is C = (1-alpha)(alpha/eps)^(alpha/(1-alpha)).
    const double eps = 1.0 / (4.0 * c2 * double(alphas.size()));
    for (const double alpha : alphas)
      young_sum += (1.0 - alpha) * std::pow(alpha / eps, alpha / (1.0 - alpha));
  }

  EnvelopeReport rep;
  fill_constants(rep, g);
  rep.margins.reserve(history.size());
  for (const auto& r : history) {
    const double envelope =
        slack * (g.m_sup + std::exp(g.c0 * r.t) * m0_l2 + c1 + c2 * young_sum);
    push_margin(rep, envelope - r.h2k_norm);
  }
  return rep;
}

std::string csv_header() {
  return "t,i1,i1_sobolev_sum,hk_norm,h2k_norm,hs_norm,m_l2,u_inf,ux_inf,"
         "di1_residual,dt_used";
}

std::string csv_line(const DiagnosticsRecord& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "%.17e,%.17e,%.17e,%.17e,%.17e,%.17e,%.17e,%.17e,%.17e,%.17e,%.17e",
                r.t, r.i1, r.i1_sobolev_sum, r.hk_norm, r.h2k_norm, r.hs_norm,
                r.m_l2, r.u_inf, r.ux_inf, r.di1_residual, r.dt_used);
  return buf;
}

void write_csv(const std::vector<DiagnosticsRecord>& history, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_failure("cannot open CSV output: " + path);
  out << csv_header() << '\n';
  for (const auto& r : history) out << csv_line(r) << '\n';
  out.flush();
  if (!out) throw io_failure("failed writing CSV output: " + path);
}

}  // namespace gch
