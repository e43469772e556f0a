#include "schles/integrator.hpp"

#include <cmath>

#include <boost/numeric/odeint.hpp>

namespace schles {

namespace odeint = boost::numeric::odeint;

IntegrateResult integrate(const Rhs& f, State y0, double t0, double t1,
                          const IntegrateOptions& opts, const Observer& observe) {
  using stepper_t = odeint::runge_kutta_fehlberg78<State>;
  auto stepper = odeint::make_controlled(opts.abs_tol, opts.rel_tol, stepper_t());

  IntegrateResult res;
  res.y = std::move(y0);
  res.t = t0;
  const double length = std::abs(t1 - t0);
  if (length == 0.0) return res;
  const double dir = t1 > t0 ? 1.0 : -1.0;
  const double min_step = opts.min_step * std::max(1.0, length);
  double dt = dir * std::min(opts.initial_step, length);

  auto system = [&](const State& y, State& dydt, double t) { f(y, dydt, t); };

  while (dir * (t1 - res.t) > 0.0) {
    if (res.steps + res.rejected > opts.max_steps)
      throw StepUnderflow("step budget exhausted at t = " + std::to_string(res.t));
    if (dir * (res.t + dt - t1) > 0.0) dt = t1 - res.t;
    const State before = res.y;
    const double t_before = res.t;
    const auto outcome = stepper.try_step(system, res.y, res.t, dt);
    if (outcome == odeint::fail) {
      ++res.rejected;
      if (std::abs(dt) < min_step && dir * (t1 - res.t) > min_step)
        throw StepUnderflow("step size underflow at t = " + std::to_string(res.t));
      continue;
    }
    ++res.steps;
    for (const cplx& v : res.y)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || std::abs(v) > opts.blowup) {
        res.y = before;
        throw BlowUpDetected(t_before, "solution blows up near t = " + std::to_string(t_before));
      }
    if (observe) observe(res.y, res.t);
  }
  return res;
}

}  // namespace schles
