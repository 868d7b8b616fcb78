#include "inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"
#include "spectral.hpp"

namespace gch {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kInvSqrt2 = 0.70710678118654752440084436210485;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t sample_seed(std::uint64_t seed, long long index) {
  return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(index)));
}

// Hand-rolled Box-Muller over mt19937_64: std::normal_distribution's output
// sequence is implementation-defined, and seeded reports must be
// reproducible bit-for-bit.
struct GaussianStream {
  std::mt19937_64 rng;

  explicit GaussianStream(std::uint64_t seed) : rng(seed) {}

  // One Box-Muller pair per call: exactly two rng draws, so the stream
  // position per mode is fixed and refining the band keeps earlier modes'
  // draws identical.
  std::pair<double, double> pair() {
    double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1p-53;  // (0,1]
    double u2 = static_cast<double>(rng() >> 11) * 0x1p-53;          // [0,1)
    double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
  }
};

void require_finite_param(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw invalid_input(std::string(name) + " must be finite");
  }
}

void validate_leibniz(double alpha, double beta) {
  require_finite_param(alpha, "fractional Leibniz alpha");
  require_finite_param(beta, "fractional Leibniz beta");
  if (!(-beta < alpha && alpha <= beta)) {
    throw invalid_input(
        "fractional Leibniz hypothesis violated: need -beta < alpha <= beta");
  }
  if (beta == 0.5) {
    throw invalid_input(
        "fractional Leibniz hypothesis violated: beta = 1/2 is excluded");
  }
}

void validate_commutator(double n, double s_tilde, double sigma) {
  require_finite_param(n, "commutator order n");
  require_finite_param(s_tilde, "commutator s_tilde");
  require_finite_param(sigma, "commutator sigma");
  if (!(n > 0.0)) {
    throw invalid_input("commutator hypothesis violated: need n > 0");
  }
  if (!(s_tilde >= 0.0)) {
    throw invalid_input("commutator hypothesis violated: need s_tilde >= 0");
  }
  if (!(1.5 < s_tilde + n && s_tilde + n <= sigma)) {
    throw invalid_input(
        "commutator hypothesis violated: need 3/2 < s_tilde + n <= sigma");
  }
}

void validate_kato_ponce(double r) {
  require_finite_param(r, "Kato-Ponce order r");
  if (!(r > 0.0)) {
    throw invalid_input("Kato-Ponce hypothesis violated: need r > 0");
  }
}

void validate_composition(std::span<const double> g_coeffs, double r) {
  require_finite_param(r, "composition order r");
  if (!(r > 0.5)) {
    throw invalid_input("composition hypothesis violated: need r > 1/2");
  }
  for (double c : g_coeffs) {
    if (!std::isfinite(c)) {
      throw invalid_input("composition coefficients must be finite");
    }
  }
}

void validate_algebra(double r) {
  require_finite_param(r, "algebra order r");
  if (!(r > 0.0)) {
    throw invalid_input("algebra hypothesis violated: need r > 0");
  }
}

// Alias-free pointwise product of two real fields.
Field product(const Field& f, const Field& g) {
  return dealiased_product({f, g}, 2);
}

// stable = the worst ratio moved by at most 5% of its base value under grid
// doubling; a base of exactly zero (degenerate tuples) is stable only if the
// refined run is zero too.
bool refinement_stable(double base, double refined) {
  if (!std::isfinite(base) || !std::isfinite(refined)) return false;
  if (base == 0.0) return refined == 0.0;
  return std::abs(refined - base) <= 0.05 * base;
}

template <class PairRatio>
double worst_pair_ratio(const SamplerConfig& cfg, const GridSpec& grid,
                        PairRatio&& ratio) {
  double worst = 0.0;
  bool finite = true;
  for (int i = 0; i < cfg.n_samples; ++i) {
    Field f = random_bandlimited(cfg, grid, 2LL * i);
    Field g = random_bandlimited(cfg, grid, 2LL * i + 1);
    double r = ratio(f, g);
    if (!std::isfinite(r)) finite = false;
    worst = std::max(worst, r);
  }
  return finite ? worst : std::numeric_limits<double>::quiet_NaN();
}

template <class PairRatio>
RatioReport run_pair_check(std::string lemma_id,
                           std::vector<double> parameter_tuple,
                           const SamplerConfig& cfg, const GridSpec& grid,
                           PairRatio&& ratio) {
  cfg.validate();
  RatioReport report;
  report.lemma_id = std::move(lemma_id);
  report.parameter_tuple = std::move(parameter_tuple);
  report.n_samples = cfg.n_samples;
  report.max_ratio = worst_pair_ratio(cfg, grid, ratio);
  GridSpec fine(grid.n() * 2, grid.length());
  report.ratio_at_double_resolution = worst_pair_ratio(cfg, fine, ratio);
  report.stable =
      refinement_stable(report.max_ratio, report.ratio_at_double_resolution);
  return report;
}

}  // namespace

void SamplerConfig::validate() const {
  if (!std::isfinite(band_fraction) || !(band_fraction > 0.0) ||
      band_fraction > 1.0 / 3.0) {
    throw invalid_input("sampler band_fraction must lie in (0, 1/3]");
  }
  if (!std::isfinite(spectral_decay) || spectral_decay < 0.0) {
    throw invalid_input("sampler spectral_decay must be >= 0");
  }
  if (n_samples < 100) {
    throw invalid_input("sampler n_samples must be at least 100");
  }
}

Field random_bandlimited(const SamplerConfig& cfg, const GridSpec& grid,
                         long long sample_index) {
  cfg.validate();
  const int n = grid.n();
  const int j_max = static_cast<int>(cfg.band_fraction * n / 2);

  Spectrum spec{grid, std::vector<std::complex<double>>(n, {0.0, 0.0})};
  GaussianStream draw(sample_seed(cfg.seed, sample_index));
  double power = 0.0;
  // Fixed mode order 0, 1, ..., j_max with one Gaussian pair per mode: the
  // draw for mode j never depends on n, so doubling the grid extends the
  // sample with new high modes instead of redrawing the low ones.
  for (int j = 0; j <= j_max; ++j) {
    auto [z1, z2] = draw.pair();
    double xi = kTwoPi * j / grid.length();
    double damp = std::pow(1.0 + xi * xi, -cfg.spectral_decay / 2.0);
    if (j == 0) {
      spec.coeffs[0] = {damp * z1, 0.0};
      power += std::norm(spec.coeffs[0]);
    } else {
      std::complex<double> c(damp * z1 * kInvSqrt2, damp * z2 * kInvSqrt2);
      spec.coeffs[j] = c;
      spec.coeffs[n - j] = std::conj(c);
      power += 2.0 * std::norm(c);
    }
  }

  double norm = std::sqrt(grid.length() * power);
  if (!(norm > 0.0)) {
    throw invalid_input("random_bandlimited: degenerate all-zero draw");
  }
  for (auto& c : spec.coeffs) c /= norm;
  return inverse_transform(spec);
}

std::string report_line(const RatioReport& r) {
  std::string params;
  char buf[64];
  for (std::size_t i = 0; i < r.parameter_tuple.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s%.6g", i ? "," : "",
                  r.parameter_tuple[i]);
    params += buf;
  }
  std::string out = r.lemma_id + " params=[" + params + "]";
  std::snprintf(buf, sizeof buf, " n_samples=%d max_ratio=%.9e",
                r.n_samples, r.max_ratio);
  out += buf;
  std::snprintf(buf, sizeof buf, " ratio_at_2N=%.9e stable=%s",
                r.ratio_at_double_resolution, r.stable ? "yes" : "no");
  out += buf;
  return out;
}

double fractional_leibniz_ratio(const Field& f, const Field& g, double alpha,
                                double beta) {
  validate_leibniz(alpha, beta);
  require_same_grid(f, g, "fractional_leibniz_ratio");
  double denom = sobolev_norm(f, beta) * sobolev_norm(g, alpha);
  if (denom == 0.0) return 0.0;
  double lhs_order = beta > 0.5 ? alpha : alpha + beta - 0.5;
  return sobolev_norm(product(f, g), lhs_order) / denom;
}

double commutator_lambda_ratio(const Field& f, const Field& g, double n,
                               double s_tilde, double sigma) {
  validate_commutator(n, s_tilde, sigma);
  require_same_grid(f, g, "commutator_lambda_ratio");
  double denom = sobolev_norm(f, sigma) * sobolev_norm(g, s_tilde + n - 1.0);
  if (denom == 0.0) return 0.0;
  Field commutator =
      sub(bessel_power(product(f, g), n), product(f, bessel_power(g, n)));
  return sobolev_norm(commutator, s_tilde) / denom;
}

double kato_ponce_ratio(const Field& f, const Field& g, double r) {
  validate_kato_ponce(r);
  require_same_grid(f, g, "kato_ponce_ratio");
  double denom = max_abs(derivative(f, 1)) * sobolev_norm(g, r - 1.0) +
                 sobolev_norm(f, r) * max_abs(g);
  if (denom == 0.0) return 0.0;
  Field commutator =
      sub(bessel_power(product(f, g), r), product(f, bessel_power(g, r)));
  return lp_norm(commutator, 2.0) / denom;
}

double composition_ratio(std::span<const double> g_coeffs, const Field& u,
                         double r) {
  validate_composition(g_coeffs, r);
  double denom = sobolev_norm(u, r);
  if (denom == 0.0) return 0.0;
  if (g_coeffs.empty()) return 0.0;
  return sobolev_norm(dealiased_polynomial(u, g_coeffs), r) / denom;
}

double algebra_ratio(const Field& f, const Field& g, double r) {
  validate_algebra(r);
  require_same_grid(f, g, "algebra_ratio");
  double denom = max_abs(f) * sobolev_norm(g, r) +
                 sobolev_norm(f, r) * max_abs(g);
  if (denom == 0.0) return 0.0;
  return sobolev_norm(product(f, g), r) / denom;
}

RatioReport check_fractional_leibniz(double alpha, double beta,
                                     const SamplerConfig& cfg,
                                     const GridSpec& grid) {
  validate_leibniz(alpha, beta);
  return run_pair_check("fractional_leibniz", {alpha, beta}, cfg, grid,
                        [&](const Field& f, const Field& g) {
                          return fractional_leibniz_ratio(f, g, alpha, beta);
                        });
}

RatioReport check_commutator_lambda(double n, double s_tilde, double sigma,
                                    const SamplerConfig& cfg,
                                    const GridSpec& grid) {
  validate_commutator(n, s_tilde, sigma);
  return run_pair_check(
      "commutator_lambda", {n, s_tilde, sigma}, cfg, grid,
      [&](const Field& f, const Field& g) {
        return commutator_lambda_ratio(f, g, n, s_tilde, sigma);
      });
}

RatioReport check_kato_ponce(double r, const SamplerConfig& cfg,
                             const GridSpec& grid) {
  validate_kato_ponce(r);
  return run_pair_check("kato_ponce", {r}, cfg, grid,
                        [&](const Field& f, const Field& g) {
                          return kato_ponce_ratio(f, g, r);
                        });
}

RatioReport check_composition(std::span<const double> g_coeffs, double r,
                              const SamplerConfig& cfg, const GridSpec& grid) {
  validate_composition(g_coeffs, r);
  cfg.validate();

  // One field per sample; remember (||u||_inf, ratio) for the envelope scan.
  auto collect = [&](const GridSpec& at, std::vector<double>* u_inf,
                     std::vector<double>* ratios) {
    double worst = 0.0;
    bool finite = true;
    for (int i = 0; i < cfg.n_samples; ++i) {
      Field u = random_bandlimited(cfg, at, i);
      double rho = composition_ratio(g_coeffs, u, r);
      if (!std::isfinite(rho)) finite = false;
      worst = std::max(worst, rho);
      if (u_inf) u_inf->push_back(max_abs(u));
      if (ratios) ratios->push_back(rho);
    }
    return finite ? worst : std::numeric_limits<double>::quiet_NaN();
  };

  RatioReport report;
  report.lemma_id = "composition";
  report.parameter_tuple.assign(1, r);
  report.parameter_tuple.insert(report.parameter_tuple.end(),
                                g_coeffs.begin(), g_coeffs.end());
  report.n_samples = cfg.n_samples;

  std::vector<double> u_inf, ratios;
  report.max_ratio = collect(grid, &u_inf, &ratios);
  GridSpec fine(grid.n() * 2, grid.length());
  report.ratio_at_double_resolution = collect(fine, nullptr, nullptr);
  report.stable =
      refinement_stable(report.max_ratio, report.ratio_at_double_resolution);

  // Monotone-envelope structure: bin by ||u||_inf, form the running maxima
  // of per-bin worst ratios (a nondecreasing envelope by construction), and
  // confirm every bin's worst ratio is finite and covered by the envelope at
  // its upper edge -- the shape of bound the composition estimate asserts.
  constexpr int kBins = 8;
  double top = *std::max_element(u_inf.begin(), u_inf.end());
  if (top > 0.0 && std::isfinite(top)) {
    std::vector<double> bin_max(kBins, 0.0);
    for (std::size_t i = 0; i < ratios.size(); ++i) {
      int b = std::min(kBins - 1,
                       static_cast<int>(u_inf[i] / top * kBins));
      bin_max[b] = std::max(bin_max[b], ratios[i]);
    }
    double envelope = 0.0;
    bool envelope_ok = true;
    for (int b = 0; b < kBins; ++b) {
      envelope = std::max(envelope, bin_max[b]);
      if (!std::isfinite(envelope) || bin_max[b] > envelope) {
        envelope_ok = false;
      }
    }
    report.stable = report.stable && envelope_ok;
  } else {
    report.stable = false;
  }
  return report;
}

RatioReport check_algebra(double r, const SamplerConfig& cfg,
                          const GridSpec& grid) {
  validate_algebra(r);
  return run_pair_check("algebra", {r}, cfg, grid,
                        [&](const Field& f, const Field& g) {
                          return algebra_ratio(f, g, r);
                        });
}

}  // namespace gch
