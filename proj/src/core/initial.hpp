#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "field.hpp"

namespace gch {

// Families of initial data.  Localized kinds (gaussian, mollified_peakon)
// are periodized by image summation; every generated field is smooth and
// exactly periodic.
enum class InitialKind {
  gaussian,           // a * exp(-(x-x0)^2/w^2), periodically summed
  cosine_packet,      // sum_i a_i cos(m_i * 2*pi*x/L), a_i = a * 2^(1-i)
  mollified_peakon,   // a * exp(-|x-x0|_per) convolved with a Gaussian
  random_bandlimited  // seeded sampler output scaled by the amplitude
};

std::string to_string(InitialKind kind);
InitialKind initial_kind_from_string(const std::string& name);

struct InitialData {
  InitialKind kind = InitialKind::gaussian;
  double amplitude = 1.0;
  // NaN means "center of the domain"; resolved when the grid is known.
  double center = std::numeric_limits<double>::quiet_NaN();
  double width = 1.0;
  std::vector<int> modes = {1};  // cosine_packet only
  double mollify_width = 0.2;    // mollified_peakon only
  std::uint64_t seed = 1;        // random_bandlimited only

  bool operator==(const InitialData&) const = default;
};

// Largest spectral magnitude adjacent to the Nyquist mode relative to the
// spectral peak; 0 for the zero field.  The resolution gate underneath
// make_initial: data whose tail exceeds 1e-8 is not representable on the
// grid without visible truncation and is rejected.
double nyquist_tail_fraction(const Field& f);

// Generate initial data on the grid.  Throws invalid_input for parameter
// violations (nonpositive width, cosine modes at or beyond Nyquist) and for
// data the grid cannot resolve (spectral tail above 1e-8 of the peak).
Field make_initial(const InitialData& data, const GridSpec& grid);

}  // namespace gch
