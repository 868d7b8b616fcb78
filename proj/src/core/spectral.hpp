#pragma once

#include <span>
#include <vector>

#include "field.hpp"

namespace gch {

// Fourier interpolation coefficients of a real field; c_0 is the mean.
Spectrum forward_transform(const Field& f);

// Inverse of forward_transform.  The spectrum must be Hermitian symmetric
// (c_{-j} = conj(c_j)) to within 1e-12 of its largest coefficient, otherwise
// the call is rejected: silently taking real parts would hide bugs.
Field inverse_transform(const Spectrum& s);

// Multiplier (1 + xi^2)^(s/2), i.e. the smoothing/roughening scale of the
// Sobolev ladder.  s may be any real, negative values smooth.
Field bessel_power(const Field& f, double s);

// Multiplier (1 + xi^2)^(+k) (inverse=false) or (1 + xi^2)^(-k): the degree-k
// Helmholtz operator (1 - d^2/dx^2)^k and its inverse.  k >= 1.
Field helmholtz_power(const Field& f, int k, bool inverse = false);

// Spectral d^order/dx^order, order >= 1.  The unpaired Nyquist mode is zeroed
// for odd orders so the result of differentiating a real field stays real.
Field derivative(const Field& f, int order);

// sqrt(L * sum_j (1 + xi_j^2)^s |c_j|^2).  With s = 0 this matches lp_norm
// (f, 2) exactly by the discrete Parseval identity.
double sobolev_norm(const Field& f, double s);

// Grid L^p norms, p in {1, 2, inf}: uniform Riemann sums (max for inf).
double lp_norm(const Field& f, double p);

// Riemann-sum integral and inner product over one period.
double integral(const Field& f);
double inner_product(const Field& f, const Field& g);

// Alias-free product of the given factors: each factor is padded onto a
// common fine grid (a power of two >= ceil((d+1)/2)*n, enough to hold every
// mode of a degree-d product), multiplied pointwise, and truncated back.
// total_degree must equal factors.size() and be >= 2.
Field dealiased_product(const std::vector<Field>& factors, int total_degree);

// Alias-free evaluation of the polynomial sum_i coeffs[i] * u^(i+1)
// (no constant term).  One padding per call, whatever the degree.
Field dealiased_polynomial(const Field& u, std::span<const double> coeffs);

}  // namespace gch
