#pragma once

// Adaptive stepping loop around an odeint controlled stepper with a
// caller-supplied step cap and an underflow guard.

#include <boost/numeric/odeint.hpp>
#include <algorithm>
#include <cmath>
#include <string>

#include "q4/errors.hpp"

namespace q4::detail {

namespace odeint = boost::numeric::odeint;

template <class State>
using Stepper78 = odeint::controlled_runge_kutta<odeint::runge_kutta_fehlberg78<State>>;

// Integrates x from t0 to t1 (either direction). `cap(t)` bounds |dt|;
// `observe(t, x)` sees every accepted step, including the start.
template <class State, class System, class Cap, class Observer>
std::size_t integrate_capped(System&& sys, State& x, double t0, double t1, double tol, Cap&& cap,
                             Observer&& observe) {
  auto stepper = odeint::make_controlled(tol, tol, odeint::runge_kutta_fehlberg78<State>());
  const double span = std::abs(t1 - t0);
  const double dir = t1 >= t0 ? 1.0 : -1.0;
  double t = t0;
  double dt = dir * std::min(span, cap(t0)) * 0.1;
  const double min_dt = 1e-15 * std::max(1.0, span);
  std::size_t steps = 0;
  observe(t, x);
  if (span == 0.0) return 0;
  while (dir * (t1 - t) > 0.0) {
    const double remaining = std::abs(t1 - t);
    double mag = std::min({std::abs(dt), cap(t), remaining});
    dt = dir * mag;
    const bool last = mag == remaining;
    const double t_before = t;
    if (stepper.try_step(sys, x, t, dt) == odeint::success) {
      if (last) t = t1;
      ++steps;
      observe(t, x);
      if (steps > 5000000) throw StepUnderflowError("ode: too many steps");
    } else if (std::abs(dt) < min_dt) {
      throw StepUnderflowError("ode: step size underflow near t = " + std::to_string(t_before));
    }
  }
  return steps;
}

}  // namespace q4::detail
