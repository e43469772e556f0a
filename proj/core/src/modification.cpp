#include "schles/modification.hpp"

#include <cmath>
#include <optional>

namespace schles {

namespace {

struct Lines {
  Vec2 selected;
  Vec2 complement;
};

Lines step_lines(const FuchsianSystem& system, const ModificationStep& step) {
  if (step.selector == LineSelector::explicit_line) {
    // Both directions need the complement invariant: lower scales it by
    // (z - x), upper keeps it while scaling the selected line.
    if (!step.allow_non_invariant) {
      const Vec2 image = system.residue(step.pole) * step.complement;
      if (image.norm() > 1e-12 && line_distance(image, step.complement) > 1e-9)
        throw InvalidSystem("complementary line is not invariant; enable non-invariant mode");
    }
    return {step.line, step.complement};
  }
  const EigenEntry e = eigen_data(system, step.pole);
  if (step.selector == LineSelector::plus) return {e.plus, e.minus};
  return {e.minus, e.plus};
}

cplx finite_pole(const FuchsianSystem& system, std::size_t i) {
  if (system.pole(i).is_infinite())
    throw InvalidSystem("single modification steps are defined at finite poles only");
  return system.pole(i).value();
}

// Rational functions a + b/(z - p) and a + b z used by the pair gauge.
RationalMatrix affine_in_z(const Mat2& a, const Mat2& b) {
  RationalMatrix r;
  r.add_monomial(0, a).add_monomial(1, b);
  return r;
}

RationalMatrix simple_polar(const Mat2& a, cplx p, const Mat2& b) {
  RationalMatrix r;
  r.add_monomial(0, a).add_polar(p, 1, b);
  return r;
}

// G = I + (f - 1) P with f = (z - x_i)/(z - x_j), either point possibly infinite.
Gauge schlesinger_gauge(const SpherePoint& xi, const SpherePoint& xj, const Mat2& p) {
  const Mat2 id = Mat2::Identity();
  if (xi.is_finite() && xj.is_finite()) {
    const cplx a = xi.value(), b = xj.value();
    return Gauge{simple_polar(id, b, (b - a) * p), simple_polar(id, a, (a - b) * p)};
  }
  if (xj.is_infinite()) {
    const cplx a = xi.value();
    return Gauge{affine_in_z(id - (1.0 + a) * p, p), simple_polar(id - p, a, p)};
  }
  const cplx b = xj.value();
  return Gauge{simple_polar(id - p, b, p), affine_in_z(id - (1.0 + b) * p, p)};
}

}  // namespace

Gauge glueing_matrix(const FuchsianSystem& system, const ModificationStep& step) {
  const cplx x = finite_pole(system, step.pole);
  const Lines l = step_lines(system, step);
  if (step.direction == StepDirection::lower)
    return rank_one_power_gauge(projector(l.complement, l.selected), x, +1);
  return rank_one_power_gauge(projector(l.selected, l.complement), x, -1);
}

FuchsianSystem apply_step(const FuchsianSystem& system, const ModificationStep& step) {
  const Gauge g = glueing_matrix(system, step);
  GaugeOptions opts;
  opts.expected_marking = system.marking();
  // The complement is the invariant line. Lower scales it (its eigenvalue
  // gains 1); upper keeps it, and the other eigenvalue loses 1.
  try {
    const EigenEntry e = eigen_data(system, step.pole);
    const Vec2 c = step_lines(system, step).complement;
    const bool lower = step.direction == StepDirection::lower;
    if (line_distance(c, e.plus) < 1e-8 && lower) opts.expected_marking[step.pole] += 1.0;
    if (line_distance(c, e.minus) < 1e-8 && !lower) opts.expected_marking[step.pole] -= 1.0;
  } catch (const DegenerateResidue&) {
    if (step.selector != LineSelector::explicit_line) throw;
  }
  return apply_gauge(system, g, opts);
}

Gauge pair_gauge(const FuchsianSystem& system, const PairSpec& spec) {
  if (spec.i == spec.j) throw InvalidSystem("pair modification needs two distinct poles");
  const EigenEntry ei = eigen_data(system, spec.i);
  const EigenEntry ej = eigen_data(system, spec.j);
  return schlesinger_gauge(system.pole(spec.i), system.pole(spec.j), projector(ei.plus, ej.minus));
}

FuchsianSystem pair_modify(const FuchsianSystem& system, const PairSpec& spec) {
  if (system.gauge() != GaugeTag::sl2)
    throw GaugeTagMismatch("pair_modify needs an sl2 system; use gl2_pair_modify");
  const Gauge g = pair_gauge(system, spec);
  GaugeOptions opts;
  opts.expected_marking = system.marking();
  opts.expected_marking[spec.i] += 1.0;
  opts.expected_marking[spec.j] -= 1.0;
  const FuchsianSystem twisted = apply_gauge(system, g, opts);

  std::vector<cplx> omega(twisted.size(), 0.0);
  omega[spec.i] = -0.5;
  omega[spec.j] = 0.5;
  return add_scalar_form(twisted, omega).retagged(GaugeTag::sl2);
}

FuchsianSystem long_shift(const FuchsianSystem& system, std::size_t k) {
  if (system.gauge() != GaugeTag::sl2)
    throw GaugeTagMismatch("long_shift needs an sl2 system");
  eigen_data(system, k);  // rejects a degenerate residue at k
  // Every auxiliary pole gives the same shift; they differ in how much the
  // intermediate gauge inflates the residues, and the eigenvalue roundoff
  // grows with that. Keep the best conditioned result.
  std::optional<FuchsianSystem> best;
  double best_scale = 0.0;
  for (std::size_t j = 0; j < system.size(); ++j) {
    if (j == k) continue;
    try {
      eigen_data(system, j);
    } catch (const DegenerateResidue&) {
      continue;
    }
    const FuchsianSystem once = pair_modify(system, {k, j}).flip_marking(j);
    FuchsianSystem out = pair_modify(once, {k, j}).flip_marking(j);
    double scale = 0.0;
    for (const auto& b : out.residues()) scale = std::max(scale, b.cwiseAbs().maxCoeff());
    if (!best || scale < best_scale) {
      best_scale = scale;
      best = std::move(out);
    }
  }
  if (!best) throw DegenerateResidue("long_shift: no auxiliary nondegenerate pole");
  return *best;
}

FuchsianSystem gl2_pair_modify(const FuchsianSystem& system, const PairSpec& spec,
                               const Gl2Shift& shift) {
  if (system.gauge() != GaugeTag::gl2)
    throw GaugeTagMismatch("gl2_pair_modify needs a gl2 system; use pair_modify");
  if (shift.sign_i != 1 && shift.sign_i != -1) throw InvalidSystem("sign must be +1 or -1");
  if (spec.i == spec.j) throw InvalidSystem("pair modification needs two distinct poles");

  // The gauge always raises at its first point; swap roles for sign -1.
  const bool swap = shift.sign_i < 0;
  const std::size_t up = swap ? spec.j : spec.i;
  const std::size_t down = swap ? spec.i : spec.j;
  const Slot up_slot = swap ? shift.slot_j : shift.slot_i;
  const Slot down_slot = swap ? shift.slot_i : shift.slot_j;

  const EigenEntry eu = eigen_data(system, up);
  const EigenEntry ed = eigen_data(system, down);
  const Vec2 image = up_slot == Slot::marked ? eu.plus : eu.minus;
  // At the lowering point the kept line is the eigenline of the other slot.
  const Vec2 kernel = down_slot == Slot::marked ? ed.minus : ed.plus;
  const Gauge g = schlesinger_gauge(system.pole(up), system.pole(down), projector(image, kernel));

  GaugeOptions opts;
  opts.expected_marking = system.marking();
  if (up_slot == Slot::marked) opts.expected_marking[up] += 1.0;
  if (down_slot == Slot::marked) opts.expected_marking[down] -= 1.0;
  return apply_gauge(system, g, opts);
}

}  // namespace schles
