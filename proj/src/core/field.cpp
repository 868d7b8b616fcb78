#include "field.hpp"

#include <algorithm>
#include <string>

namespace gch {

namespace {
bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

GridSpec::GridSpec(int n, double length) : n_(n), length_(length) {
  if (n < 8 || !power_of_two(n))
    throw invalid_input("grid size must be a power of two >= 8, got " + std::to_string(n));
  if (!(length > 0.0) || !std::isfinite(length))
    throw invalid_input("grid length must be positive and finite");
}

double GridSpec::wavenumber(int i) const {
  constexpr double two_pi = 6.283185307179586476925286766559;
  return two_pi * mode(i) / length_;
}

std::vector<double> GridSpec::wavenumbers() const {
  std::vector<double> xi(n_);
  for (int i = 0; i < n_; ++i) xi[i] = wavenumber(i);
  return xi;
}

Field make_field(const GridSpec& grid, double fill) {
  return Field{grid, std::vector<double>(grid.n(), fill)};
}

bool all_finite(const Field& f) {
  return std::all_of(f.values.begin(), f.values.end(),
                     [](double v) { return std::isfinite(v); });
}

void require_finite(const Field& f, const char* who) {
  if (f.values.size() != static_cast<size_t>(f.grid.n()))
    throw invalid_input(std::string(who) + ": field size does not match its grid");
  if (!all_finite(f)) throw overflow_detected(std::string(who) + ": non-finite field values");
}

void require_same_grid(const Field& a, const Field& b, const char* who) {
  if (!(a.grid == b.grid)) throw invalid_input(std::string(who) + ": fields live on different grids");
}

double max_abs(const Field& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

void axpy(Field& y, double a, const Field& x) {
  require_same_grid(y, x, "axpy");
  for (size_t i = 0; i < y.values.size(); ++i) y.values[i] += a * x.values[i];
}

Field scaled(const Field& f, double a) {
  Field out = f;
  for (double& v : out.values) v *= a;
  return out;
}

Field add(const Field& a, const Field& b) {
  require_same_grid(a, b, "add");
  Field out = a;
  for (size_t i = 0; i < out.values.size(); ++i) out.values[i] += b.values[i];
  return out;
}

Field sub(const Field& a, const Field& b) {
  require_same_grid(a, b, "sub");
  Field out = a;
  for (size_t i = 0; i < out.values.size(); ++i) out.values[i] -= b.values[i];
  return out;
}

}  // namespace gch
