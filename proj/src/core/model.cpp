#include "model.hpp"

#include <cmath>
#include <string>

#include "spectral.hpp"

namespace gch {

void ModelParams::validate() const {
  if (k < 1) throw invalid_input("model: k must be >= 1, got " + std::to_string(k));
  if (p < 1) throw invalid_input("model: p must be >= 1, got " + std::to_string(p));
  if (!std::isfinite(b)) throw invalid_input("model: b must be finite");
  for (double c : g_coeffs)
    if (!std::isfinite(c)) throw invalid_input("model: non-finite g coefficient");
}

ModelParams preset_params(const std::string& name) {
  if (name == "camassa_holm") return ModelParams{1, 1, 2.0, {}};
  if (name == "degasperis_procesi") return ModelParams{1, 1, 3.0, {}};
  if (name == "novikov") return ModelParams{1, 2, 3.0, {}};
  if (name == "higher_order_k2") return ModelParams{2, 2, 3.0, {}};
  if (name == "higher_order_k3") return ModelParams{3, 2, 3.0, {}};
  throw invalid_input("unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() {
  return {"camassa_holm", "degasperis_procesi", "novikov", "higher_order_k2", "higher_order_k3"};
}

Field momentum(const Field& u, const ModelParams& mp) {
  mp.validate();
  return helmholtz_power(u, mp.k);
}

Field velocity_from_momentum(const Field& m, const ModelParams& mp) {
  mp.validate();
  return helmholtz_power(m, mp.k, /*inverse=*/true);
}

Field g_eval(const Field& u, const ModelParams& mp) {
  mp.validate();
  return dealiased_polynomial(u, mp.g_coeffs);
}

Field g_prime_eval(const Field& u, const ModelParams& mp) {
  mp.validate();
  require_finite(u, "g_prime_eval");
  // g = sum_i c_i u^(i+1)  =>  g' = c_0 + sum_{j>=1} (j+1) c_j u^j.
  Field out = make_field(u.grid, mp.g_coeffs.empty() ? 0.0 : mp.g_coeffs[0]);
  if (mp.g_coeffs.size() > 1) {
    std::vector<double> dc(mp.g_coeffs.size() - 1);
    for (size_t j = 1; j < mp.g_coeffs.size(); ++j) dc[j - 1] = (j + 1) * mp.g_coeffs[j];
    axpy(out, 1.0, dealiased_polynomial(u, dc));
  }
  return out;
}

namespace {

// Alias-free u^p.
Field power_of(const Field& u, int p) {
  if (p == 1) return u;
  return dealiased_product(std::vector<Field>(p, u), p);
}

// Shared pieces of both right-hand-side routes, each product alias-free.
struct Staging {
  Field ux;      // u_x
  Field upow;    // u^p
  Field dup;     // u^(p-1) u_x, written as (u^p)_x / p
  Field m;       // H^k u
  Field advect;  // dealiased u^p u_x
  Field gterm;   // (g(u))_x
};

Staging stage(const Field& u, const ModelParams& mp) {
  Field ux = derivative(u, 1);
  Field upow = power_of(u, mp.p);
  Field dup = scaled(derivative(upow, 1), 1.0 / mp.p);
  Field m = helmholtz_power(u, mp.k);
  Field advect = dealiased_product({upow, ux}, 2);
  Field gterm = mp.g_coeffs.empty() ? make_field(u.grid)
                                    : derivative(dealiased_polynomial(u, mp.g_coeffs), 1);
  return Staging{std::move(ux), std::move(upow), std::move(dup),
                 std::move(m), std::move(advect), std::move(gterm)};
}

// f(u) from already-staged pieces; also hands back the advection product so
// rhs_velocity_form reuses the identical bits.
Field smoothing_terms(const Staging& st, const ModelParams& mp) {
  Field gamux = helmholtz_power(st.ux, mp.k);
  Field t1 = sub(helmholtz_power(st.advect, mp.k), dealiased_product({st.upow, gamux}, 2));
  Field t2 = scaled(dealiased_product({st.dup, st.m}, 2), mp.b);
  Field sum = sub(sub(t1, t2), st.gterm);
  axpy(sum, mp.b + 1.0, st.advect);
  return helmholtz_power(sum, mp.k, /*inverse=*/true);
}

}  // namespace

Field helmholtz_commutator(const Field& u, const ModelParams& mp) {
  mp.validate();
  require_finite(u, "helmholtz_commutator");
  Field ux = derivative(u, 1);
  Field upow = power_of(u, mp.p);
  Field out = sub(helmholtz_power(dealiased_product({upow, ux}, 2), mp.k),
                  dealiased_product({upow, helmholtz_power(ux, mp.k)}, 2));
  if (!all_finite(out)) throw overflow_detected("helmholtz_commutator: non-finite result");
  return out;
}

Field nonlinearity(const Field& u, const ModelParams& mp) {
  mp.validate();
  require_finite(u, "nonlinearity");
  Field f = smoothing_terms(stage(u, mp), mp);
  if (!all_finite(f)) throw overflow_detected("nonlinearity: non-finite result");
  return f;
}

Field rhs_velocity_form(const Field& u, const ModelParams& mp) {
  mp.validate();
  require_finite(u, "rhs_velocity_form");
  Staging st = stage(u, mp);
  Field rhs = smoothing_terms(st, mp);
  axpy(rhs, -1.0, st.advect);
  if (!all_finite(rhs)) throw overflow_detected("rhs_velocity_form: non-finite result");
  return rhs;
}

Field rhs_momentum_form(const Field& u, const ModelParams& mp) {
  mp.validate();
  require_finite(u, "rhs_momentum_form");
  Staging st = stage(u, mp);
  Field mx = derivative(st.m, 1);
  // dm/dt = -u^p m_x - b (u^(p-1)u_x) m - (g(u))_x + (b+1) u^p u_x
  Field mt = scaled(dealiased_product({st.upow, mx}, 2), -1.0);
  axpy(mt, -mp.b, dealiased_product({st.dup, st.m}, 2));
  axpy(mt, -1.0, st.gterm);
  axpy(mt, mp.b + 1.0, st.advect);
  Field rhs = helmholtz_power(mt, mp.k, /*inverse=*/true);
  if (!all_finite(rhs)) throw overflow_detected("rhs_momentum_form: non-finite result");
  return rhs;
}

}  // namespace gch
