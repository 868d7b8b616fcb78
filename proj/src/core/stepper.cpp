#include "stepper.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "spectral.hpp"

namespace gch {

void StepControl::validate() const {
  if (dt && (!(*dt > 0.0) || !std::isfinite(*dt)))
    throw invalid_input("control: fixed dt must be positive and finite");
  if (!(cfl_safety > 0.0) || cfl_safety > 1.0)
    throw invalid_input("control: cfl_safety must lie in (0, 1]");
  if (!(t_end >= 0.0) || !std::isfinite(t_end))
    throw invalid_input("control: t_end must be nonnegative and finite");
  if (!(breaking_threshold > 0.0))
    throw invalid_input("control: breaking_threshold must be positive");
  if (max_steps < 1) throw invalid_input("control: max_steps must be >= 1");
}

double cfl_dt(const Field& u, const ModelParams& mp, const StepControl& c, double t_now) {
  c.validate();
  const double remaining = c.t_end - t_now;
  if (!(remaining > 0.0)) return 0.0;
  double dt;
  if (c.dt) {
    dt = *c.dt;
  } else {
    require_finite(u, "cfl_dt");
    double speed = 1.0;
    const double amp = max_abs(u);
    double amp_p = 1.0;
    for (int i = 0; i < mp.p; ++i) amp_p *= amp;
    speed = std::max(speed, amp_p);
    dt = c.cfl_safety * u.grid.dx() / speed;
  }
  return std::min(dt, remaining);
}

SolverState rk4_step(const SolverState& st, double dt, const ModelParams& mp) {
  if (dt == 0.0 || !std::isfinite(dt))
    throw invalid_input("rk4_step: dt must be nonzero and finite");
  try {
    Field k1 = rhs_velocity_form(st.u, mp);
    Field y = st.u;
    axpy(y, 0.5 * dt, k1);
    Field k2 = rhs_velocity_form(y, mp);
    y = st.u;
    axpy(y, 0.5 * dt, k2);
    Field k3 = rhs_velocity_form(y, mp);
    y = st.u;
    axpy(y, dt, k3);
    Field k4 = rhs_velocity_form(y, mp);

    Field acc = k1;
    axpy(acc, 2.0, k2);
    axpy(acc, 2.0, k3);
    axpy(acc, 1.0, k4);
    SolverState out = st;
    axpy(out.u, dt / 6.0, acc);
    out.t = st.t + dt;
    out.step = st.step + 1;
    if (!all_finite(out.u)) {
      SolverState broken = st;
      broken.breaking = true;
      broken.breaking_time = st.t;
      return broken;
    }
    return out;
  } catch (const overflow_detected&) {
    // The right-hand side exploded mid-step: hand back the last finite state.
    SolverState broken = st;
    broken.breaking = true;
    broken.breaking_time = st.t;
    return broken;
  }
}

bool detect_breaking(const SolverState& st, const StepControl& c) {
  if (st.breaking) return true;
  if (!all_finite(st.u)) return true;
  return max_abs(derivative(st.u, 1)) >= c.breaking_threshold;
}

AdvanceStatus advance(SolverState& st, const ModelParams& mp, const StepControl& c,
                      const Observer& observer, long long observer_stride) {
  c.validate();
  mp.validate();
  if (observer_stride < 1) throw invalid_input("advance: observer_stride must be >= 1");

  double last_dt = 0.0;
  long long last_seen = -1;
  auto notify = [&] {
    if (observer && st.step != last_seen) {
      observer(st, last_dt);
      last_seen = st.step;
    }
  };

  if (!st.breaking && detect_breaking(st, c)) {
    st.breaking = true;
    st.breaking_time = st.t;
  }
  notify();

  AdvanceStatus status;
  while (true) {
    if (st.breaking) { status = AdvanceStatus::breaking; break; }
    if (st.t >= c.t_end) { status = AdvanceStatus::reached_t_end; break; }
    if (st.step >= c.max_steps) { status = AdvanceStatus::max_steps_exhausted; break; }

    const double remaining = c.t_end - st.t;
    double dt = cfl_dt(st.u, mp, c, st.t);
    // Absorb accumulated rounding: when the nominal step reaches the
    // remaining time to within 1e-12 relative, stretch it and finish, rather
    // than leaving an ulp-sized stub step.
    const bool clipped = dt >= remaining * (1.0 - 1e-12);
    if (clipped) dt = remaining;
    st = rk4_step(st, dt, mp);
    last_dt = dt;
    if (!st.breaking) {
      if (clipped) st.t = c.t_end;  // land on t_end exactly, not within an ulp
      if (detect_breaking(st, c)) {
        st.breaking = true;
        st.breaking_time = st.t;
      }
    }
    const bool finishing = st.breaking || st.t >= c.t_end || st.step >= c.max_steps;
    if (!finishing && st.step % observer_stride == 0) notify();
  }
  notify();
  return status;
}

}  // namespace gch
