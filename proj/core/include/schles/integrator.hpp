#pragma once

#include <functional>
#include <vector>

#include "schles/types.hpp"

namespace schles {

using State = std::vector<cplx>;
/// dy/dt = f(y, t), written into dydt.
using Rhs = std::function<void(const State& y, State& dydt, double t)>;
/// Called after every accepted step.
using Observer = std::function<void(const State& y, double t)>;

struct IntegrateOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  double initial_step = 1e-2;
  double min_step = 1e-13;  // relative to the interval length
  std::size_t max_steps = 5'000'000;
  // Any component above this modulus counts as a blow-up (movable pole).
  double blowup = 1e10;
};

struct IntegrateResult {
  State y;
  double t = 0.0;
  std::size_t steps = 0;
  std::size_t rejected = 0;
};

/// Thrown when the solution grows past IntegrateOptions::blowup.
class BlowUpDetected : public Error {
 public:
  BlowUpDetected(double t, const std::string& what) : Error(what), t_(t) {}
  /// Last accepted time before the blow-up.
  double t() const { return t_; }

 private:
  double t_;
};

/// Adaptive Runge-Kutta-Fehlberg 7(8) from t0 to t1 (either direction).
IntegrateResult integrate(const Rhs& f, State y0, double t0, double t1,
                          const IntegrateOptions& opts = {}, const Observer& observe = {});

}  // namespace schles
