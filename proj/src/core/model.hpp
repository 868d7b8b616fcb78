#pragma once

#include <string>
#include <vector>

#include "field.hpp"

namespace gch {

// The equation family
//
//   m_t + m_x u^p + b m u^(p-1) u_x = -(g(u))_x + (b+1) u^p u_x,
//   m = (1 - d^2/dx^2)^k u,
//
// on a periodic domain.  g is a polynomial with no constant term:
// g(u) = sum_i g_coeffs[i] * u^(i+1).
struct ModelParams {
  int k = 1;       // Helmholtz degree of the momentum map
  int p = 1;       // power in the transport velocity u^p
  double b = 2.0;  // stretching balance; b = p+1 is the conservative line
  std::vector<double> g_coeffs;

  void validate() const;
  bool operator==(const ModelParams&) const = default;
};

// Named parameter sets.  Throws invalid_input for unknown names.
ModelParams preset_params(const std::string& name);
std::vector<std::string> preset_names();

// m = (1 - d^2/dx^2)^k u and its inverse.
Field momentum(const Field& u, const ModelParams& mp);
Field velocity_from_momentum(const Field& m, const ModelParams& mp);

// Alias-free g(u) and g'(u).
Field g_eval(const Field& u, const ModelParams& mp);
Field g_prime_eval(const Field& u, const ModelParams& mp);

// Commutator [H^k, u^p] u_x = H^k(u^p u_x) - u^p H^k(u_x), every product
// dealiased.  For k = 1 this has the closed form
// -(p(p-1) u^(p-2) u_x^3 + 3p u^(p-1) u_x u_xx).
Field helmholtz_commutator(const Field& u, const ModelParams& mp);

// The smoothing right-hand side of the velocity formulation:
// f(u) = H^-k( [H^k,u^p]u_x - b u^(p-1)u_x H^k u - (g(u))_x + (b+1) u^p u_x ),
// assembled with one inverse Helmholtz application at the end.
Field nonlinearity(const Field& u, const ModelParams& mp);

// du/dt in the velocity form: -u^p u_x + f(u).
Field rhs_velocity_form(const Field& u, const ModelParams& mp);

// du/dt obtained by assembling dm/dt from the momentum form and applying
// H^-k.  Must agree with rhs_velocity_form to rounding; keeping both routes
// alive is the point.
Field rhs_momentum_form(const Field& u, const ModelParams& mp);

}  // namespace gch
