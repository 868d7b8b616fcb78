#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace gch {

// Uniform periodic grid on [0, L): n points, x_i = i*L/n.  n must be a power
// of two (>= 8) so transforms and dealiasing grids stay cheap and predictable.
class GridSpec {
 public:
  GridSpec(int n, double length);

  int n() const { return n_; }
  double length() const { return length_; }
  double dx() const { return length_ / n_; }
  double node(int i) const { return length_ * i / n_; }

  // Signed mode index for storage slot i: 0,1,...,n/2-1,-n/2,...,-1.
  int mode(int i) const { return i < n_ / 2 ? i : i - n_; }
  // Wavenumber xi_j = 2*pi*j/L for storage slot i.
  double wavenumber(int i) const;
  std::vector<double> wavenumbers() const;

  bool operator==(const GridSpec&) const = default;

 private:
  int n_;
  double length_;
};

// Real samples on a grid.
struct Field {
  GridSpec grid;
  std::vector<double> values;
};

// Complex Fourier coefficients c_j in the same storage order as GridSpec
// modes; normalized so that f(x) = sum_j c_j exp(i*xi_j*x) and c_0 is the
// mean of f.
struct Spectrum {
  GridSpec grid;
  std::vector<std::complex<double>> coeffs;
};

Field make_field(const GridSpec& grid, double fill = 0.0);

template <class F>
Field sample(const GridSpec& grid, F&& f) {
  Field out = make_field(grid);
  for (int i = 0; i < grid.n(); ++i) out.values[i] = f(grid.node(i));
  return out;
}

bool all_finite(const Field& f);
void require_finite(const Field& f, const char* who);
void require_same_grid(const Field& a, const Field& b, const char* who);

double max_abs(const Field& f);

// y += a*x
void axpy(Field& y, double a, const Field& x);
Field scaled(const Field& f, double a);
Field add(const Field& a, const Field& b);
Field sub(const Field& a, const Field& b);

}  // namespace gch
