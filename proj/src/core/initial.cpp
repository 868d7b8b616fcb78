#include "initial.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>

#include "errors.hpp"
#include "inequalities.hpp"
#include "spectral.hpp"

namespace gch {

namespace {

constexpr double kTailLimit = 1e-8;

double resolve_center(const InitialData& data, const GridSpec& grid) {
  double c = data.center;
  if (std::isnan(c)) return grid.length() / 2.0;
  if (!std::isfinite(c)) {
    throw invalid_input("initial center must be finite");
  }
  // Wrap into [0, L).
  c = std::fmod(c, grid.length());
  if (c < 0.0) c += grid.length();
  return c;
}

// Shortest signed periodic distance from x to x0.
double periodic_distance(double x, double x0, double length) {
  double d = std::abs(x - x0);
  return std::min(d, length - d);
}

Field periodized_gaussian(const InitialData& data, const GridSpec& grid) {
  if (!(data.width > 0.0) || !std::isfinite(data.width)) {
    throw invalid_input("gaussian width must be positive and finite");
  }
  const double x0 = resolve_center(data, grid);
  const double L = grid.length();
  // Image sum: exp(-(n*L/w)^2) underflows once n*L/w exceeds ~27, so this
  // covers even width ~ L to full double precision.
  const int n_images = static_cast<int>(std::ceil(27.0 * data.width / L)) + 2;
  return sample(grid, [&](double x) {
    double v = 0.0;
    for (int n = -n_images; n <= n_images; ++n) {
      double d = (x - x0 + n * L) / data.width;
      v += std::exp(-d * d);
    }
    return data.amplitude * v;
  });
}

Field cosine_packet(const InitialData& data, const GridSpec& grid) {
  if (data.modes.empty()) {
    throw invalid_input("cosine packet needs at least one mode");
  }
  for (int m : data.modes) {
    if (m < 1) throw invalid_input("cosine packet modes must be >= 1");
    if (m >= grid.n() / 2) {
      throw invalid_input(
          "cosine packet mode at or beyond Nyquist for this grid");
    }
  }
  const double two_pi_over_l = 2.0 * M_PI / grid.length();
  return sample(grid, [&](double x) {
    double v = 0.0;
    double a = data.amplitude;
    for (int m : data.modes) {
      v += a * std::cos(m * two_pi_over_l * x);
      a *= 0.5;
    }
    return v;
  });
}

Field mollified_peakon(const InitialData& data, const GridSpec& grid) {
  if (!(data.mollify_width > 0.0) || !std::isfinite(data.mollify_width)) {
    throw invalid_input("peakon mollify_width must be positive and finite");
  }
  const double x0 = resolve_center(data, grid);
  Field peak = sample(grid, [&](double x) {
    return data.amplitude *
           std::exp(-periodic_distance(x, x0, grid.length()));
  });
  // Convolve with the unit-mass Gaussian of width sigma: multiply the
  // coefficients by its transform exp(-(xi*sigma/2)^2).
  Spectrum s = forward_transform(peak);
  const double sigma = data.mollify_width;
  for (int i = 0; i < grid.n(); ++i) {
    double xs = grid.wavenumber(i) * sigma / 2.0;
    s.coeffs[i] *= std::exp(-xs * xs);
  }
  return inverse_transform(s);
}

Field seeded_sample(const InitialData& data, const GridSpec& grid) {
  SamplerConfig cfg;
  cfg.seed = data.seed;
  cfg.n_samples = 100;  // irrelevant for a single draw; keep a valid config
  Field f = random_bandlimited(cfg, grid);
  for (double& v : f.values) v *= data.amplitude;
  return f;
}

}  // namespace

std::string to_string(InitialKind kind) {
  switch (kind) {
    case InitialKind::gaussian: return "gaussian";
    case InitialKind::cosine_packet: return "cosine_packet";
    case InitialKind::mollified_peakon: return "mollified_peakon";
    case InitialKind::random_bandlimited: return "random_bandlimited";
  }
  throw invalid_input("unknown initial kind");
}

InitialKind initial_kind_from_string(const std::string& name) {
  if (name == "gaussian") return InitialKind::gaussian;
  if (name == "cosine_packet") return InitialKind::cosine_packet;
  if (name == "mollified_peakon") return InitialKind::mollified_peakon;
  if (name == "random_bandlimited") return InitialKind::random_bandlimited;
  throw invalid_input("unknown initial kind '" + name + "'");
}

double nyquist_tail_fraction(const Field& f) {
  Spectrum s = forward_transform(f);
  double peak = 0.0;
  for (const auto& c : s.coeffs) peak = std::max(peak, std::abs(c));
  if (peak == 0.0) return 0.0;
  const int n = f.grid.n();
  double tail = std::max(std::abs(s.coeffs[n / 2]),
                         std::abs(s.coeffs[n / 2 - 1]));
  return tail / peak;
}

namespace {

Field build_initial(const InitialData& data, const GridSpec& grid) {
  switch (data.kind) {
    case InitialKind::gaussian: return periodized_gaussian(data, grid);
    case InitialKind::cosine_packet: return cosine_packet(data, grid);
    case InitialKind::mollified_peakon: return mollified_peakon(data, grid);
    case InitialKind::random_bandlimited: return seeded_sample(data, grid);
  }
  throw invalid_input("unknown initial kind");
}

}  // namespace

Field make_initial(const InitialData& data, const GridSpec& grid) {
  if (!std::isfinite(data.amplitude)) {
    throw invalid_input("initial amplitude must be finite");
  }
  Field f = build_initial(data, grid);
  double tail = nyquist_tail_fraction(f);
  if (tail > kTailLimit) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "initial data unresolved on this grid: spectral tail at "
                  "Nyquist is %.3e of the peak (limit %.0e)",
                  tail, kTailLimit);
    throw invalid_input(buf);
  }
  return f;
}

}  // namespace gch
