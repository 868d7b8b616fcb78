#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>

#include "core/spectral.hpp"
#include "oracles.hpp"

using namespace gch;
using std::numbers::pi;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Full-band random field: uniform samples in [-1, 1].
Field random_field(const GridSpec& grid, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Field f = make_field(grid);
  for (double& v : f.values) v = u(rng);
  return f;
}

// Band-limited random field: modes |j| <= jmax with random amplitudes.
Field random_smooth(const GridSpec& grid, std::mt19937_64& rng, int jmax) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Field f = make_field(grid);
  for (int j = 0; j <= jmax; ++j) {
    const double a = u(rng), b = j == 0 ? 0.0 : u(rng);
    const double xi = 2.0 * pi * j / grid.length();
    for (int i = 0; i < grid.n(); ++i) {
      const double x = grid.node(i);
      f.values[i] += a * std::cos(xi * x) + b * std::sin(xi * x);
    }
  }
  return f;
}

// Random field with a geometrically decaying spectrum: the shape actual
// solution fields have, and the regime where high-order operator round trips
// are well conditioned.
Field random_decay(const GridSpec& grid, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Field f = make_field(grid);
  for (int j = 0; j <= grid.n() / 2 - 1; ++j) {
    const double damp = std::pow(2.0, -static_cast<double>(j));
    const double a = damp * u(rng), b = j == 0 ? 0.0 : damp * u(rng);
    const double xi = 2.0 * pi * j / grid.length();
    for (int i = 0; i < grid.n(); ++i) {
      const double x = grid.node(i);
      f.values[i] += a * std::cos(xi * x) + b * std::sin(xi * x);
    }
  }
  return f;
}

double max_diff(const Field& a, const Field& b) {
  double d = 0.0;
  for (size_t i = 0; i < a.values.size(); ++i)
    d = std::max(d, std::abs(a.values[i] - b.values[i]));
  return d;
}

double spec_distance(const Spectrum& a, const std::vector<std::complex<double>>& b) {
  double d = 0.0;
  for (size_t i = 0; i < a.coeffs.size(); ++i) d = std::max(d, std::abs(a.coeffs[i] - b[i]));
  return d;
}

}  // namespace

TEST_CASE("grid validation and wavenumber layout") {
  CHECK_THROWS_AS(GridSpec(12, 1.0), invalid_input);   // not a power of two
  CHECK_THROWS_AS(GridSpec(4, 1.0), invalid_input);    // too small
  CHECK_THROWS_AS(GridSpec(16, -1.0), invalid_input);  // bad length
  CHECK_THROWS_AS(GridSpec(16, 0.0), invalid_input);

  GridSpec g(16, 5.0);
  CHECK(g.dx() == doctest::Approx(5.0 / 16));
  CHECK(g.mode(0) == 0);
  CHECK(g.mode(7) == 7);
  CHECK(g.mode(8) == -8);   // unpaired mode
  CHECK(g.mode(15) == -1);
  for (int j = 1; j < 8; ++j)
    CHECK(g.wavenumber(j) == doctest::Approx(-g.wavenumber(16 - j)));
  CHECK(g.wavenumber(1) == doctest::Approx(2.0 * pi / 5.0));
}

TEST_CASE("forward transform matches the brute-force DFT") {
  std::mt19937_64 rng(123);
  for (int n : {8, 32, 64}) {
    GridSpec g(n, 2.0 * pi);
    Field f = random_field(g, rng);
    Spectrum s = forward_transform(f);
    CHECK(spec_distance(s, oracle::dft(f)) < 1e-13);
  }
  // Off-2pi period too.
  GridSpec g(32, 7.5);
  Field f = random_field(g, rng);
  CHECK(spec_distance(forward_transform(f), oracle::dft(f)) < 1e-13);
}

TEST_CASE("cosine lands on the +-1 modes with amplitude 1/2") {
  GridSpec g(8, 2.0 * pi);
  Field f = sample(g, [](double x) { return std::cos(x); });
  Spectrum s = forward_transform(f);
  CHECK(std::abs(s.coeffs[1] - 0.5) < 1e-15);
  CHECK(std::abs(s.coeffs[7] - 0.5) < 1e-15);
  for (int i : {0, 2, 3, 4, 5, 6}) CHECK(std::abs(s.coeffs[i]) < 1e-15);
}

TEST_CASE("c_0 is the mean") {
  std::mt19937_64 rng(7);
  GridSpec g(64, 3.0);
  Field f = random_field(g, rng);
  double mean = 0.0;
  for (double v : f.values) mean += v;
  mean /= g.n();
  CHECK(forward_transform(f).coeffs[0].real() == doctest::Approx(mean).epsilon(1e-13));
  CHECK(std::abs(forward_transform(f).coeffs[0].imag()) < 1e-15);
}

TEST_CASE("round trips") {
  std::mt19937_64 rng(99);
  GridSpec g(128, 2.0 * pi);
  Field f = random_field(g, rng);
  Field back = inverse_transform(forward_transform(f));
  for (int i = 0; i < g.n(); ++i) CHECK(back.values[i] == doctest::Approx(f.values[i]).epsilon(1e-12));
}

TEST_CASE("asymmetric spectra are rejected") {
  GridSpec g(16, 2.0 * pi);
  Spectrum s{g, std::vector<std::complex<double>>(16, {0.0, 0.0})};
  s.coeffs[1] = {1.0, 0.5};
  s.coeffs[15] = {1.0, 0.5};  // should be the conjugate
  CHECK_THROWS_AS(inverse_transform(s), invalid_input);
  s.coeffs[15] = {1.0, -0.5};
  CHECK_NOTHROW(inverse_transform(s));
  // Imaginary junk on the self-paired modes is asymmetry too.
  s.coeffs[8] = {0.0, 1.0};
  CHECK_THROWS_AS(inverse_transform(s), invalid_input);
}

TEST_CASE("non-finite inputs are rejected") {
  GridSpec g(16, 1.0);
  Field f = make_field(g);
  f.values[3] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(forward_transform(f), overflow_detected);
  CHECK_THROWS_AS(lp_norm(f, 2.0), overflow_detected);
}

TEST_CASE("hand-computed Sobolev norms of cos(x)") {
  GridSpec g(64, 2.0 * pi);
  Field f = sample(g, [](double x) { return std::cos(x); });
  // ||cos||_{L^2}^2 = pi on a 2*pi period; H^1 doubles it: L*(2*(1/2)^2*(1+1)^s).
  CHECK(sobolev_norm(f, 0.0) == doctest::Approx(std::sqrt(pi)).epsilon(1e-13));
  CHECK(sobolev_norm(f, 1.0) == doctest::Approx(std::sqrt(2.0 * pi)).epsilon(1e-13));
  CHECK(sobolev_norm(f, 2.0) == doctest::Approx(2.0 * std::sqrt(pi)).epsilon(1e-13));
}

TEST_CASE("discrete Parseval ties sobolev_norm(.,0) to lp_norm(.,2)") {
  std::mt19937_64 rng(2024);
  for (double L : {2.0 * pi, 11.0}) {
    GridSpec g(64, L);
    Field f = random_field(g, rng);
    CHECK(sobolev_norm(f, 0.0) == doctest::Approx(lp_norm(f, 2.0)).epsilon(1e-12));
  }
}

TEST_CASE("sobolev_norm is monotone in s") {
  std::mt19937_64 rng(5);
  GridSpec g(64, 2.0 * pi);
  Field f = random_field(g, rng);
  double prev = sobolev_norm(f, -2.0);
  for (double s : {-1.0, -0.5, 0.0, 0.7, 1.0, 2.0}) {
    double cur = sobolev_norm(f, s);
    CHECK(cur >= prev * (1.0 - 1e-14));
    prev = cur;
  }
}

TEST_CASE("sobolev_norm equals the L2 norm after bessel_power") {
  std::mt19937_64 rng(17);
  GridSpec g(64, 2.0 * pi);
  Field f = random_smooth(g, rng, 20);
  for (double s : {-1.5, 0.5, 1.0, 2.5}) {
    CHECK(sobolev_norm(f, s) ==
          doctest::Approx(lp_norm(bessel_power(f, s), 2.0)).epsilon(1e-10));
  }
}

TEST_CASE("bessel_power eigenvalues and inverses") {
  GridSpec g(32, 2.0 * pi);
  Field f = sample(g, [](double x) { return std::cos(x); });
  // cos(x) is an eigenfunction: multiplier (1+1)^(s/2).
  Field h = bessel_power(f, 1.0);
  for (int i = 0; i < g.n(); ++i)
    CHECK(h.values[i] == doctest::Approx(std::sqrt(2.0) * f.values[i]).epsilon(1e-12));

  std::mt19937_64 rng(3);
  Field r = random_decay(g, rng);
  for (double s : {0.5, 1.0, 3.0}) {
    Field back = bessel_power(bessel_power(r, s), -s);
    CHECK(max_diff(back, r) < 1e-10 * max_abs(r));
  }
  // s = 0 is the identity.
  Field same = bessel_power(r, 0.0);
  CHECK(max_diff(same, r) < 1e-13 * max_abs(r));
}

TEST_CASE("helmholtz_power matches bessel_power at even orders") {
  std::mt19937_64 rng(31);
  GridSpec g(64, 2.0 * pi);
  Field f = random_decay(g, rng);
  for (int k : {1, 2, 3}) {
    Field a = helmholtz_power(f, k);
    Field b = bessel_power(f, 2.0 * k);
    CHECK(max_diff(a, b) < 1e-12 * max_abs(a));
    Field back = helmholtz_power(a, k, /*inverse=*/true);
    CHECK(max_diff(back, f) < 1e-12 * max_abs(f));
  }
  CHECK_THROWS_AS(helmholtz_power(f, 0), invalid_input);
}

TEST_CASE("helmholtz_power equals (1 - d^2/dx^2)^k term by term") {
  // For smooth fields, H^1 u = u - u_xx and H^2 u = u - 2 u_xx + u_xxxx.
  GridSpec g(64, 2.0 * pi);
  Field f = sample(g, [](double x) { return std::cos(2.0 * x) + 0.3 * std::sin(3.0 * x); });
  Field lhs1 = helmholtz_power(f, 1);
  Field rhs1 = sub(f, derivative(f, 2));
  for (int i = 0; i < g.n(); ++i)
    CHECK(lhs1.values[i] == doctest::Approx(rhs1.values[i]).epsilon(1e-12));
  Field lhs2 = helmholtz_power(f, 2);
  Field rhs2 = add(sub(f, scaled(derivative(f, 2), 2.0)), derivative(f, 4));
  for (int i = 0; i < g.n(); ++i)
    CHECK(lhs2.values[i] == doctest::Approx(rhs2.values[i]).epsilon(1e-12));
}

TEST_CASE("derivative against closed forms and finite differences") {
  GridSpec g(64, 2.0 * pi);
  Field f = sample(g, [](double x) { return std::cos(x); });
  Field d1 = derivative(f, 1);
  Field d2 = derivative(f, 2);
  for (int i = 0; i < g.n(); ++i) {
    const double x = g.node(i);
    CHECK(d1.values[i] == doctest::Approx(-std::sin(x)).epsilon(1e-12));
    CHECK(d2.values[i] == doctest::Approx(-std::cos(x)).epsilon(1e-12));
  }

  std::mt19937_64 rng(11);
  GridSpec gs(32, 2.0 * pi);
  Field r = random_smooth(gs, rng, 6);
  Field rd = derivative(r, 1);
  for (double x : {0.3, 1.7, 4.4}) {
    const double fd = oracle::fd_derivative(r, x, 1, 1e-5);
    const double sp = oracle::interp(rd, x);
    CHECK(sp == doctest::Approx(fd).epsilon(1e-7));
  }
  CHECK_THROWS_AS(derivative(r, 0), invalid_input);
}

TEST_CASE("derivative is skew-adjoint under the grid inner product") {
  std::mt19937_64 rng(41);
  GridSpec g(64, 5.0);
  Field f = random_field(g, rng);
  Field h = random_field(g, rng);
  const double lhs = inner_product(f, derivative(h, 1));
  const double rhs = -inner_product(derivative(f, 1), h);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
}

TEST_CASE("odd derivative of the unpaired mode is zero") {
  // cos(xi_{n/2} x) samples to (-1)^i; its sine partner vanishes on the grid,
  // so the only consistent real derivative is identically zero.
  GridSpec g(16, 2.0 * pi);
  Field f = sample(g, [&](double x) { return std::cos(8.0 * x); });
  Field d = derivative(f, 1);
  for (double v : d.values) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("lp norms") {
  GridSpec g(1024, 2.0 * pi);
  Field f = sample(g, [](double x) { return std::cos(x); });
  // int |cos| over a period = 4; the integrand kinks, so the Riemann sum is
  // only O(h^2) accurate: at n = 1024 the error is ~ h^2/3 ~ 1e-5.
  CHECK(lp_norm(f, 1.0) == doctest::Approx(4.0).epsilon(1e-4));
  CHECK(lp_norm(f, 2.0) == doctest::Approx(std::sqrt(pi)).epsilon(1e-13));
  CHECK(lp_norm(f, kInf) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(lp_norm(f, 3.0), invalid_input);
}

TEST_CASE("dealiased product: products that fit the band are exact") {
  GridSpec g(32, 2.0 * pi);
  Field c = sample(g, [](double x) { return std::cos(x); });
  Field prod = dealiased_product({c, c}, 2);
  for (int i = 0; i < g.n(); ++i) {
    const double x = g.node(i);
    CHECK(prod.values[i] == doctest::Approx(0.5 * (1.0 + std::cos(2.0 * x))).epsilon(1e-13));
  }
  // Multiplying by a constant-one field changes nothing.
  Field one = make_field(g, 1.0);
  std::mt19937_64 rng(8);
  Field r = random_smooth(g, rng, 10);
  Field same = dealiased_product({r, one}, 2);
  for (int i = 0; i < g.n(); ++i)
    CHECK(same.values[i] == doctest::Approx(r.values[i]).epsilon(1e-12));
}

TEST_CASE("dealiased cube of cos(3x) drops the out-of-band mode") {
  // cos(3x)^3 = (3 cos 3x + cos 9x)/4; on n = 16 the 9th mode is out of band,
  // so the alias-free cube is exactly (3/4) cos 3x -- matching the reference
  // evaluation on a 128-point grid truncated to the coarse band.
  GridSpec g(16, 2.0 * pi);
  Field c = sample(g, [](double x) { return std::cos(3.0 * x); });
  Field cube = dealiased_product({c, c, c}, 3);
  for (int i = 0; i < g.n(); ++i)
    CHECK(cube.values[i] == doctest::Approx(0.75 * std::cos(3.0 * g.node(i))).epsilon(1e-13));

  GridSpec fine(128, 2.0 * pi);
  Field ref = sample(fine, [](double x) { double v = std::cos(3.0 * x); return v * v * v; });
  auto refc = oracle::dft(ref);
  auto c16 = forward_transform(cube);
  for (int j = -8; j <= 7; ++j) {
    const int slot16 = j >= 0 ? j : 16 + j;
    const int slot128 = j >= 0 ? j : 128 + j;
    CHECK(std::abs(c16.coeffs[slot16] - refc[slot128]) < 1e-12);
  }
}

TEST_CASE("dealiased product of general fields matches an oversampled reference") {
  std::mt19937_64 rng(77);
  GridSpec g(32, 2.0 * pi);
  GridSpec fine(128, 2.0 * pi);
  Field a = random_field(g, rng);
  Field b = random_field(g, rng);
  Field prod = dealiased_product({a, b}, 2);

  // Reference: sample both interpolants on the 128 grid, multiply pointwise
  // (alias-free there), truncate the spectrum to the coarse band.
  Field af = make_field(fine), bf = make_field(fine);
  for (int i = 0; i < fine.n(); ++i) {
    af.values[i] = oracle::interp(a, fine.node(i));
    bf.values[i] = oracle::interp(b, fine.node(i));
  }
  Field pf = make_field(fine);
  for (int i = 0; i < fine.n(); ++i) pf.values[i] = af.values[i] * bf.values[i];
  auto refc = oracle::dft(pf);
  auto got = forward_transform(prod);
  for (int j = -15; j <= 15; ++j) {
    const int slot32 = j >= 0 ? j : 32 + j;
    const int slot128 = j >= 0 ? j : 128 + j;
    CHECK(std::abs(got.coeffs[slot32] - refc[slot128]) < 1e-11);
  }
}

TEST_CASE("dealiased product rejects bad arguments") {
  GridSpec g(32, 2.0 * pi), g2(64, 2.0 * pi);
  Field a = make_field(g, 1.0), b = make_field(g2, 1.0);
  CHECK_THROWS_AS(dealiased_product({a, b}, 2), invalid_input);
  CHECK_THROWS_AS(dealiased_product({a}, 1), invalid_input);
  CHECK_THROWS_AS(dealiased_product({a, a}, 3), invalid_input);
}

TEST_CASE("dealiased polynomial agrees with stacked products") {
  std::mt19937_64 rng(55);
  GridSpec g(64, 2.0 * pi);
  Field u = random_smooth(g, rng, 12);

  const double c2[] = {0.0, 1.0};  // u^2
  Field viaPoly = dealiased_polynomial(u, c2);
  Field viaProd = dealiased_product({u, u}, 2);
  for (int i = 0; i < g.n(); ++i)
    CHECK(viaPoly.values[i] == doctest::Approx(viaProd.values[i]).epsilon(1e-12));

  const double c13[] = {2.0, 0.0, 3.0};  // 2u + 3u^3
  Field mix = dealiased_polynomial(u, c13);
  Field expect = add(scaled(u, 2.0), scaled(dealiased_product({u, u, u}, 3), 3.0));
  for (int i = 0; i < g.n(); ++i)
    CHECK(mix.values[i] == doctest::Approx(expect.values[i]).epsilon(1e-12));

  Field zero = dealiased_polynomial(u, std::span<const double>{});
  for (double v : zero.values) CHECK(v == 0.0);
}

TEST_CASE("pad plus truncate preserves the unpaired mode") {
  // A field with energy exactly at the Nyquist slot survives a product with
  // the constant-one field unchanged.
  GridSpec g(16, 2.0 * pi);
  Field nyq = sample(g, [](double x) { return std::cos(8.0 * x); });
  Field one = make_field(g, 1.0);
  Field out = dealiased_product({nyq, one}, 2);
  for (int i = 0; i < g.n(); ++i)
    CHECK(out.values[i] == doctest::Approx(nyq.values[i]).epsilon(1e-12));
}

TEST_CASE("integral and inner product are exact for band-limited fields") {
  GridSpec g(32, 2.0 * pi);
  Field f = sample(g, [](double x) { return 1.5 + std::cos(2.0 * x); });
  CHECK(integral(f) == doctest::Approx(1.5 * 2.0 * pi).epsilon(1e-13));
  Field c = sample(g, [](double x) { return std::cos(x); });
  Field s = sample(g, [](double x) { return std::sin(x); });
  CHECK(inner_product(c, c) == doctest::Approx(pi).epsilon(1e-13));
  CHECK(std::abs(inner_product(c, s)) < 1e-13);
}
