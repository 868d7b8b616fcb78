#pragma once

#include <functional>
#include <optional>

#include "field.hpp"
#include "model.hpp"

namespace gch {

struct StepControl {
  std::optional<double> dt;         // fixed step when set, otherwise CFL-derived
  double cfl_safety = 0.3;          // fraction of dx/max(1, |u|_inf^p)
  double t_end = 0.0;
  double breaking_threshold = 1e6;  // |u_x|_inf at which a run is declared broken
  long long max_steps = 100000000;

  void validate() const;
  bool operator==(const StepControl&) const = default;
};

struct SolverState {
  double t = 0.0;
  Field u;
  long long step = 0;
  bool breaking = false;
  std::optional<double> breaking_time;
};

enum class AdvanceStatus { reached_t_end, breaking, max_steps_exhausted };

// Step size for the next step from time t_now: the fixed dt if configured,
// else cfl_safety * dx / max(1, |u|_inf^p); always clipped to the remaining
// time so the final step lands exactly on t_end.
double cfl_dt(const Field& u, const ModelParams& mp, const StepControl& c, double t_now);

// One classical RK4 step of the velocity-form right-hand side.  Pure: the
// input state is untouched.  A mid-step overflow marks the returned state as
// breaking (at the pre-step time) instead of propagating the exception.
SolverState rk4_step(const SolverState& st, double dt, const ModelParams& mp);

// True when the state is already flagged, has gone non-finite, or the slope
// |u_x|_inf has reached the breaking threshold.
bool detect_breaking(const SolverState& st, const StepControl& c);

// Called with (state, dt of the step that produced it); dt 0 for the initial
// state.
using Observer = std::function<void(const SolverState&, double)>;

// March the state to t_end (or until breaking / max_steps).  The observer
// fires on the initial state, every observer_stride-th step, and the final
// state, never twice for the same step.
AdvanceStatus advance(SolverState& st, const ModelParams& mp, const StepControl& c,
                      const Observer& observer = {}, long long observer_stride = 1);

}  // namespace gch
