#include "spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "fft.hpp"

namespace gch {

namespace {

using cd = std::complex<double>;

// Integer power by repeated multiplication: deterministic and exact for the
// small exponents used here.
double ipow(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

// Forward DFT, multiply mode i by mult[i], inverse, divide by n.  Used by all
// the diagonal operators; the multiplier must map Hermitian input to
// Hermitian output (real-even, or odd-imaginary with the Nyquist zeroed).
Field apply_multiplier(const Field& f, const std::vector<cd>& mult, const char* who) {
  require_finite(f, who);
  const int n = f.grid.n();
  std::vector<cd> buf(n), hat(n);
  for (int i = 0; i < n; ++i) buf[i] = cd(f.values[i], 0.0);
  detail::exec_dft(n, -1, buf.data(), hat.data());
  for (int i = 0; i < n; ++i) hat[i] *= mult[i];
  detail::exec_dft(n, +1, hat.data(), buf.data());
  Field out = make_field(f.grid);
  for (int i = 0; i < n; ++i) out.values[i] = buf[i].real() / n;
  return out;
}

// Smallest power of two that holds every mode of a degree-d product of
// fields from an n-point grid (need >= (d+1)*n/2 slots).
int fine_size(int n, int degree) {
  int m = ((degree + 2) / 2) * n;
  int p = 1;
  while (p < m) p *= 2;
  return p;
}

// Zero-pad coarse coefficients into a fine spectrum.  The coarse grid's
// unpaired Nyquist mode -n/2 is split evenly between the fine grid's +-n/2
// bins (Hermitian halves), so pad-then-truncate is the identity.
std::vector<cd> embed(const std::vector<cd>& c, int n, int m) {
  std::vector<cd> fine(m, cd(0.0, 0.0));
  for (int j = 0; j <= n / 2 - 1; ++j) fine[j] = c[j];
  for (int j = -n / 2 + 1; j <= -1; ++j) fine[m + j] = c[n + j];
  const cd nyq = 0.5 * c[n / 2];
  fine[n / 2] = nyq;
  fine[m - n / 2] = std::conj(nyq);
  return fine;
}

// Inverse of embed: keep the coarse band, folding the fine +-n/2 bins back
// into the coarse Nyquist slot.
std::vector<cd> truncate(const std::vector<cd>& fine, int n, int m) {
  std::vector<cd> c(n, cd(0.0, 0.0));
  for (int j = 0; j <= n / 2 - 1; ++j) c[j] = fine[j];
  for (int j = -n / 2 + 1; j <= -1; ++j) c[n + j] = fine[m + j];
  c[n / 2] = fine[m - n / 2] + fine[n / 2];
  return c;
}

// Real samples of a coarse field on the m-point fine grid.
std::vector<double> fine_samples(const Field& f, int m) {
  const int n = f.grid.n();
  Spectrum s = forward_transform(f);
  std::vector<cd> fine = embed(s.coeffs, n, m);
  std::vector<cd> buf(m);
  detail::exec_dft(m, +1, fine.data(), buf.data());
  std::vector<double> out(m);
  for (int i = 0; i < m; ++i) out[i] = buf[i].real();
  return out;
}

// Transform fine-grid samples back to an alias-free coarse field.
Field coarse_field(const std::vector<double>& samples, const GridSpec& grid, int m) {
  const int n = grid.n();
  std::vector<cd> buf(m), hat(m);
  for (int i = 0; i < m; ++i) buf[i] = cd(samples[i], 0.0);
  detail::exec_dft(m, -1, buf.data(), hat.data());
  for (cd& v : hat) v /= static_cast<double>(m);
  std::vector<cd> c = truncate(hat, n, m);
  std::vector<cd> cbuf(n);
  detail::exec_dft(n, +1, c.data(), cbuf.data());
  Field out = make_field(grid);
  for (int i = 0; i < n; ++i) out.values[i] = cbuf[i].real();
  return out;
}

}  // namespace

Spectrum forward_transform(const Field& f) {
  require_finite(f, "forward_transform");
  const int n = f.grid.n();
  std::vector<cd> buf(n), hat(n);
  for (int i = 0; i < n; ++i) buf[i] = cd(f.values[i], 0.0);
  detail::exec_dft(n, -1, buf.data(), hat.data());
  for (cd& v : hat) v /= static_cast<double>(n);
  return Spectrum{f.grid, std::move(hat)};
}

Field inverse_transform(const Spectrum& s) {
  const int n = s.grid.n();
  if (s.coeffs.size() != static_cast<size_t>(n))
    throw invalid_input("inverse_transform: spectrum size does not match its grid");
  double scale = 0.0;
  for (const cd& v : s.coeffs) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw overflow_detected("inverse_transform: non-finite coefficients");
    scale = std::max(scale, std::abs(v));
  }
  const double tol = 1e-12 * std::max(scale, 1e-300);
  if (std::abs(s.coeffs[0].imag()) > tol || std::abs(s.coeffs[n / 2].imag()) > tol)
    throw invalid_input("inverse_transform: asymmetric spectrum (self-paired mode not real)");
  for (int j = 1; j <= n / 2 - 1; ++j)
    if (std::abs(s.coeffs[j] - std::conj(s.coeffs[n - j])) > tol)
      throw invalid_input("inverse_transform: asymmetric spectrum at mode " + std::to_string(j));
  std::vector<cd> buf(n);
  detail::exec_dft(n, +1, s.coeffs.data(), buf.data());
  Field out = make_field(s.grid);
  for (int i = 0; i < n; ++i) out.values[i] = buf[i].real();
  return out;
}

Field bessel_power(const Field& f, double s) {
  if (!std::isfinite(s)) throw invalid_input("bessel_power: order must be finite");
  const int n = f.grid.n();
  std::vector<cd> mult(n);
  for (int i = 0; i < n; ++i) {
    const double xi = f.grid.wavenumber(i);
    mult[i] = cd(std::pow(1.0 + xi * xi, 0.5 * s), 0.0);
  }
  return apply_multiplier(f, mult, "bessel_power");
}

Field helmholtz_power(const Field& f, int k, bool inverse) {
  if (k < 1) throw invalid_input("helmholtz_power: k must be >= 1, got " + std::to_string(k));
  const int n = f.grid.n();
  std::vector<cd> mult(n);
  for (int i = 0; i < n; ++i) {
    const double xi = f.grid.wavenumber(i);
    const double w = ipow(1.0 + xi * xi, k);
    mult[i] = cd(inverse ? 1.0 / w : w, 0.0);
  }
  return apply_multiplier(f, mult, "helmholtz_power");
}

Field derivative(const Field& f, int order) {
  if (order < 1) throw invalid_input("derivative: order must be >= 1, got " + std::to_string(order));
  const int n = f.grid.n();
  std::vector<cd> mult(n);
  // (i*xi)^order = i^order * xi^order, cycling through {1, i, -1, -i}.
  for (int i = 0; i < n; ++i) {
    const double m = ipow(f.grid.wavenumber(i), order);
    switch (order % 4) {
      case 0: mult[i] = cd(m, 0.0); break;
      case 1: mult[i] = cd(0.0, m); break;
      case 2: mult[i] = cd(-m, 0.0); break;
      default: mult[i] = cd(0.0, -m); break;
    }
  }
  if (order % 2 == 1) mult[n / 2] = cd(0.0, 0.0);  // unpaired mode has no real odd derivative
  return apply_multiplier(f, mult, "derivative");
}

double sobolev_norm(const Field& f, double s) {
  if (!std::isfinite(s)) throw invalid_input("sobolev_norm: order must be finite");
  Spectrum sp = forward_transform(f);
  const int n = f.grid.n();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double xi = f.grid.wavenumber(i);
    sum += std::pow(1.0 + xi * xi, s) * std::norm(sp.coeffs[i]);
  }
  return std::sqrt(f.grid.length() * sum);
}

double lp_norm(const Field& f, double p) {
  require_finite(f, "lp_norm");
  if (p == 1.0) {
    double sum = 0.0;
    for (double v : f.values) sum += std::abs(v);
    return f.grid.dx() * sum;
  }
  if (p == 2.0) {
    double sum = 0.0;
    for (double v : f.values) sum += v * v;
    return std::sqrt(f.grid.dx() * sum);
  }
  if (p == std::numeric_limits<double>::infinity()) return max_abs(f);
  throw invalid_input("lp_norm: p must be 1, 2, or inf");
}

double integral(const Field& f) {
  require_finite(f, "integral");
  double sum = 0.0;
  for (double v : f.values) sum += v;
  return f.grid.dx() * sum;
}

double inner_product(const Field& f, const Field& g) {
  require_same_grid(f, g, "inner_product");
  require_finite(f, "inner_product");
  require_finite(g, "inner_product");
  double sum = 0.0;
  for (size_t i = 0; i < f.values.size(); ++i) sum += f.values[i] * g.values[i];
  return f.grid.dx() * sum;
}

Field dealiased_product(const std::vector<Field>& factors, int total_degree) {
  if (factors.size() < 2)
    throw invalid_input("dealiased_product: need at least two factors");
  if (total_degree != static_cast<int>(factors.size()))
    throw invalid_input("dealiased_product: total_degree must equal the factor count");
  const GridSpec& grid = factors.front().grid;
  for (const Field& f : factors) require_same_grid(factors.front(), f, "dealiased_product");
  const int m = fine_size(grid.n(), total_degree);
  std::vector<double> acc = fine_samples(factors[0], m);
  for (size_t f = 1; f < factors.size(); ++f) {
    std::vector<double> next = fine_samples(factors[f], m);
    for (int i = 0; i < m; ++i) acc[i] *= next[i];
  }
  return coarse_field(acc, grid, m);
}

Field dealiased_polynomial(const Field& u, std::span<const double> coeffs) {
  for (double c : coeffs)
    if (!std::isfinite(c)) throw invalid_input("dealiased_polynomial: non-finite coefficient");
  int degree = 0;
  for (size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0.0) degree = static_cast<int>(i) + 1;
  if (degree == 0) {
    require_finite(u, "dealiased_polynomial");
    return make_field(u.grid);
  }
  if (degree == 1) {
    require_finite(u, "dealiased_polynomial");
    return scaled(u, coeffs[0]);
  }
  const int m = fine_size(u.grid.n(), degree);
  std::vector<double> s = fine_samples(u, m);
  std::vector<double> acc(m, coeffs[degree - 1]);
  for (int k = degree - 2; k >= 0; --k)
    for (int i = 0; i < m; ++i) acc[i] = acc[i] * s[i] + coeffs[k];
  for (int i = 0; i < m; ++i) acc[i] *= s[i];
  return coarse_field(acc, u.grid, m);
}

}  // namespace gch
