#pragma once

#include <complex>

namespace gch::detail {

// Unnormalized complex DFT, out of place.  sign -1: F_q = sum_i in_i e^{-2pi i q i/n};
// sign +1: the conjugate sum.  Plans are cached per (n, sign) and reused, so
// repeated calls are cheap and bit-reproducible.
void exec_dft(int n, int sign, const std::complex<double>* in, std::complex<double>* out);

}  // namespace gch::detail
