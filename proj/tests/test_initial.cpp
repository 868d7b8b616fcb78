#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "core/errors.hpp"
#include "core/initial.hpp"
#include "core/spectral.hpp"

using namespace gch;
using std::numbers::pi;

namespace {

bool throws_mentioning(const InitialData& data, const GridSpec& grid,
                       const char* fragment) {
  try {
    make_initial(data, grid);
  } catch (const invalid_input& e) {
    return std::string(e.what()).find(fragment) != std::string::npos;
  }
  return false;
}

int argmax(const Field& f) {
  int best = 0;
  for (int i = 1; i < f.grid.n(); ++i) {
    if (f.values[i] > f.values[best]) best = i;
  }
  return best;
}

}  // namespace

TEST_CASE("cosine packet matches its closed form with halving amplitudes") {
  GridSpec grid(64, 2.0 * pi);
  InitialData data;
  data.kind = InitialKind::cosine_packet;
  data.amplitude = 0.8;
  data.modes = {1, 3};
  Field f = make_initial(data, grid);
  for (int i = 0; i < grid.n(); ++i) {
    const double x = grid.node(i);
    const double expected = 0.8 * std::cos(x) + 0.4 * std::cos(3.0 * x);
    CHECK(std::abs(f.values[i] - expected) <= 1e-15);
  }
}

TEST_CASE("cosine packet validates its mode list") {
  GridSpec grid(64, 2.0 * pi);
  InitialData data;
  data.kind = InitialKind::cosine_packet;

  data.modes = {};
  CHECK_THROWS_AS(make_initial(data, grid), invalid_input);
  data.modes = {0};
  CHECK_THROWS_AS(make_initial(data, grid), invalid_input);
  data.modes = {32};  // Nyquist bin of a 64-point grid
  CHECK(throws_mentioning(data, grid, "Nyquist"));
}

TEST_CASE("gaussian peaks at the configured center and dies at the boundary") {
  GridSpec grid(256, 40.0);
  InitialData data;  // kind defaults to gaussian, center to the domain middle
  data.amplitude = 2.0;
  data.width = 1.0;
  Field f = make_initial(data, grid);
  CHECK(argmax(f) == 128);  // x = 20, the middle of [0, 40)
  CHECK(f.values[128] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(f.values[0]) <= 1e-12 * data.amplitude);
}

TEST_CASE("gaussian center wraps periodically") {
  GridSpec grid(128, 40.0);
  InitialData left;
  left.width = 1.5;
  left.center = -5.0;
  InitialData right = left;
  right.center = 35.0;
  Field a = make_initial(left, grid);
  Field b = make_initial(right, grid);
  for (int i = 0; i < grid.n(); ++i) CHECK(a.values[i] == b.values[i]);
}

TEST_CASE("a gaussian much wider than the box periodizes to a constant") {
  GridSpec grid(64, 40.0);
  InitialData data;
  data.width = 80.0;
  Field f = make_initial(data, grid);
  double lo = f.values[0], hi = f.values[0];
  for (double v : f.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(hi > 1.0);  // the image sum stacks up well past a single bump
  CHECK((hi - lo) / hi <= 1e-12);
}

TEST_CASE("under-resolved gaussian data is rejected with a clear message") {
  GridSpec grid(64, 40.0);
  InitialData data;
  data.width = 0.1;
  CHECK(throws_mentioning(data, grid, "unresolved"));
}

TEST_CASE("mollified peakon resolves exactly when the grid affords it") {
  InitialData data;
  data.kind = InitialKind::mollified_peakon;
  data.amplitude = 1.0;
  data.mollify_width = 0.05;

  GridSpec fine(512, 2.0 * pi);
  Field f = make_initial(data, fine);
  const int c = fine.n() / 2;  // center defaults to x = L/2, a grid node
  CHECK(argmax(f) == c);
  CHECK(f.values[c] < data.amplitude);  // smoothing shaves the corner
  CHECK(f.values[c] > 0.9 * data.amplitude);
  for (int j = 1; j < 100; j += 17) {
    CHECK(std::abs(f.values[c + j] - f.values[c - j]) <= 1e-12);
  }

  GridSpec coarse(32, 2.0 * pi);
  CHECK(throws_mentioning(data, coarse, "unresolved"));
}

TEST_CASE("random bandlimited data is seeded, scaled, and grid-resolved") {
  GridSpec grid(64, 2.0 * pi);
  InitialData data;
  data.kind = InitialKind::random_bandlimited;
  data.seed = 11;

  Field once = make_initial(data, grid);
  Field again = make_initial(data, grid);
  for (int i = 0; i < grid.n(); ++i) CHECK(once.values[i] == again.values[i]);

  data.seed = 12;
  Field other = make_initial(data, grid);
  double diff = 0.0;
  for (int i = 0; i < grid.n(); ++i) {
    diff = std::max(diff, std::abs(once.values[i] - other.values[i]));
  }
  CHECK(diff > 1e-3);

  data.seed = 11;
  data.amplitude = 3.0;
  Field scaled = make_initial(data, grid);
  for (int i = 0; i < grid.n(); ++i) {
    CHECK(scaled.values[i] == 3.0 * once.values[i]);
  }
}

TEST_CASE("zero-amplitude data passes the resolution gate") {
  GridSpec grid(64, 40.0);
  InitialData data;
  data.amplitude = 0.0;
  data.width = 0.01;  // hopeless shape, but scaled to nothing
  Field f = make_initial(data, grid);
  for (double v : f.values) CHECK(v == 0.0);
}

TEST_CASE("initial kinds round trip through their names") {
  for (InitialKind kind :
       {InitialKind::gaussian, InitialKind::cosine_packet,
        InitialKind::mollified_peakon, InitialKind::random_bandlimited}) {
    CHECK(initial_kind_from_string(to_string(kind)) == kind);
  }
  CHECK_THROWS_AS(initial_kind_from_string("sombrero"), invalid_input);
}

TEST_CASE("nyquist tail fraction flags spectral content at the grid edge") {
  GridSpec grid(64, 2.0 * pi);

  Field impulse = make_field(grid);
  impulse.values[0] = 1.0;  // flat spectrum: the tail is as big as the peak
  CHECK(nyquist_tail_fraction(impulse) == doctest::Approx(1.0).epsilon(1e-10));

  Field smooth = sample(grid, [](double x) { return std::cos(x); });
  CHECK(nyquist_tail_fraction(smooth) <= 1e-14);

  CHECK(nyquist_tail_fraction(make_field(grid)) == 0.0);
}
