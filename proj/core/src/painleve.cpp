#include "schles/painleve.hpp"

#include <algorithm>
#include <cmath>

#include "schles/modification.hpp"

namespace schles {

namespace {

void check_state(const HamiltonianState& s) {
  const double eps = 1e-14;
  if (std::abs(s.t) < eps || std::abs(s.t - 1.0) < eps)
    throw SingularState("t must differ from 0 and 1");
  if (std::abs(s.x) < eps || std::abs(s.x - 1.0) < eps || std::abs(s.x - s.t) < eps)
    throw SingularState("x must differ from 0, 1 and t");
}

// Pieces of H: H = N / T with N = x(x-1)(x-t) p^2 - S p + kappa (x - t).
struct HParts {
  cplx T, dT;          // t(t-1), 2t - 1
  cplx cubic, dcubic;  // x(x-1)(x-t), d/dx
  cplx S, Sx, St;      // S and its partials
};

HParts parts(const HamiltonianState& s, const PviParams& P) {
  const cplx x = s.x, t = s.t;
  HParts h;
  h.T = t * (t - 1.0);
  h.dT = 2.0 * t - 1.0;
  h.cubic = x * (x - 1.0) * (x - t);
  h.dcubic = 3.0 * x * x - 2.0 * (1.0 + t) * x + t;
  h.S = P.l0 * (x - 1.0) * (x - t) + P.l1 * x * (x - t) + (P.lt - 1.0) * x * (x - 1.0);
  h.Sx = P.l0 * (2.0 * x - 1.0 - t) + P.l1 * (2.0 * x - t) + (P.lt - 1.0) * (2.0 * x - 1.0);
  h.St = -P.l0 * (x - 1.0) - P.l1 * x;
  return h;
}

double segment_distance(cplx a, cplx b, cplx p) {
  const cplx d = b - a;
  double s = std::norm(d) == 0.0 ? 0.0 : ((p - a) * std::conj(d)).real() / std::norm(d);
  s = std::clamp(s, 0.0, 1.0);
  return std::abs(a + s * d - p);
}

void check_segment(cplx t0, cplx t1, double margin) {
  if (segment_distance(t0, t1, 0.0) < margin || segment_distance(t0, t1, 1.0) < margin)
    throw PoleCollision("t path comes within " + std::to_string(margin) + " of 0 or 1");
}

}  // namespace

cplx hamiltonian(const HamiltonianState& s, const PviParams& P) {
  check_state(s);
  const HParts h = parts(s, P);
  return (h.cubic * s.p * s.p - h.S * s.p + P.kappa() * (s.x - s.t)) / h.T;
}

std::pair<cplx, cplx> hamilton_vector(const HamiltonianState& s, const PviParams& P) {
  check_state(s);
  const HParts h = parts(s, P);
  const cplx Hp = (2.0 * h.cubic * s.p - h.S) / h.T;
  const cplx Hx = (h.dcubic * s.p * s.p - h.Sx * s.p + P.kappa()) / h.T;
  return {Hp, -Hx};
}

cplx hamilton_acceleration(const HamiltonianState& s, const PviParams& P) {
  const auto [dx, dp] = hamilton_vector(s, P);
  const HParts h = parts(s, P);
  const cplx x = s.x, p = s.p;
  const cplx Hp = (2.0 * h.cubic * p - h.S) / h.T;
  // d/dt of x(x-1)(x-t) at fixed x is -x(x-1)
  const cplx Hpt = (2.0 * (-x * (x - 1.0)) * p - h.St) / h.T - Hp * h.dT / h.T;
  const cplx Hpx = (2.0 * h.dcubic * p - h.Sx) / h.T;
  const cplx Hpp = 2.0 * h.cubic / h.T;
  return Hpt + Hpx * dx + Hpp * dp;
}

cplx pvi_rhs(cplx x, cplx dx, cplx t, const PviParams& P) {
  check_state({x, 0.0, t});
  const cplx a = P.alpha(), b = P.beta(), g = P.gamma(), d = P.delta();
  const cplx T = t * (t - 1.0);
  return 0.5 * (1.0 / x + 1.0 / (x - 1.0) + 1.0 / (x - t)) * dx * dx -
         (1.0 / t + 1.0 / (t - 1.0) + 1.0 / (x - t)) * dx +
         x * (x - 1.0) * (x - t) / (T * T) *
             (a - b * t / (x * x) + g * (t - 1.0) / ((x - 1.0) * (x - 1.0)) +
              (0.5 - d) * T / ((x - t) * (x - t)));
}

HamiltonTrajectory hamilton_flow(const HamiltonianState& s0, const PviParams& P, cplx t1,
                                 const FlowOptions& opts) {
  check_state(s0);
  const cplx t0 = s0.t, dt = t1 - t0;
  check_segment(t0, t1, opts.margin);
  const Rhs f = [&](const State& y, State& dy, double s) {
    const auto [vx, vp] = hamilton_vector({y[0], y[1], t0 + s * dt}, P);
    dy[0] = vx * dt;
    dy[1] = vp * dt;
  };
  HamiltonTrajectory traj;
  traj.t.push_back(t0);
  traj.states.push_back(s0);
  State y = {s0.x, s0.p};
  const std::size_t n = std::max<std::size_t>(opts.samples, 2);
  for (std::size_t k = 1; k < n; ++k) {
    const double sa = double(k - 1) / double(n - 1), sb = double(k) / double(n - 1);
    try {
      y = integrate(f, y, sa, sb, opts.integrate).y;
    } catch (const BlowUpDetected& e) {
      traj.blowup_t = t0 + e.t() * dt;
      return traj;
    } catch (const StepUnderflow&) {
      traj.blowup_t = t0 + sa * dt;
      return traj;
    } catch (const SingularState&) {
      traj.blowup_t = t0 + sa * dt;
      return traj;
    }
    traj.t.push_back(t0 + sb * dt);
    traj.states.push_back({y[0], y[1], t0 + sb * dt});
  }
  return traj;
}

std::pair<HamiltonianState, PviParams> backlund_pair01(const HamiltonianState& s, const PviParams& P,
                                                       double c) {
  if (std::abs(s.x) < 1e-14 || std::abs(s.x - 1.0) < 1e-14)
    throw SingularState("x must differ from 0 and 1");
  HamiltonianState r = s;
  r.p += c * (1.0 / (s.x - 1.0) - 1.0 / s.x);
  PviParams Q = P;
  Q.l0 += 0.5;
  Q.l1 -= 0.5;
  return {r, Q};
}

namespace {

// Residual components of one sample for a given c.
std::pair<cplx, cplx> backlund_defect(const HamiltonianState& s, const PviParams& P, double c,
                                      double* scale) {
  const auto [dx, dp] = hamilton_vector(s, P);
  const auto [s2, P2] = backlund_pair01(s, P, c);
  const cplx x = s.x;
  const cplx ddelta = -1.0 / ((x - 1.0) * (x - 1.0)) + 1.0 / (x * x);
  const cplx dp2 = dp + c * ddelta * dx;
  const auto [hx, hp] = hamilton_vector(s2, P2);
  if (scale) *scale = 1.0 + std::abs(dx) + std::abs(dp);
  return {dx - hx, dp2 - hp};
}

double sum_squares(const HamiltonTrajectory& traj, const PviParams& P, double c) {
  double s = 0.0;
  for (const auto& st : traj.states) {
    double scale = 1.0;
    const auto [r1, r2] = backlund_defect(st, P, c, &scale);
    s += (std::norm(r1) + std::norm(r2)) / (scale * scale);
  }
  return s;
}

}  // namespace

double backlund_residual(const HamiltonTrajectory& traj, const PviParams& P, double c) {
  double worst = 0.0;
  for (const auto& st : traj.states) {
    double scale = 1.0;
    const auto [r1, r2] = backlund_defect(st, P, c, &scale);
    worst = std::max(worst, (std::abs(r1) + std::abs(r2)) / scale);
  }
  return worst;
}

BacklundFit fit_backlund_coefficient(const HamiltonTrajectory& traj, const PviParams& P) {
  // Coarse scan, then golden-section refinement around the best grid point.
  double best = 0.0, best_val = INFINITY;
  for (int k = -400; k <= 400; ++k) {
    const double c = k * 0.01;
    const double v = sum_squares(traj, P, c);
    if (v < best_val) {
      best_val = v;
      best = c;
    }
  }
  double lo = best - 0.01, hi = best + 0.01;
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 80; ++it) {
    const double m1 = hi - phi * (hi - lo), m2 = lo + phi * (hi - lo);
    if (sum_squares(traj, P, m1) < sum_squares(traj, P, m2)) hi = m2;
    else lo = m1;
  }
  BacklundFit fit;
  fit.c_fit = 0.5 * (lo + hi);
  fit.residual_fit = backlund_residual(traj, P, fit.c_fit);
  fit.residual_printed = backlund_residual(traj, P, 1.0);
  return fit;
}

// ---------------------------------------------------------------------------

FuchsianSystem schlesinger_system(cplx t, const Mat2& b0, const Mat2& b1, const Mat2& bt,
                                  const std::vector<cplx>& marking) {
  std::vector<SpherePoint> poles = {SpherePoint(0.0), SpherePoint(1.0), SpherePoint(t),
                                    SpherePoint::infinity()};
  std::vector<Mat2> res = {b0, b1, bt, Mat2(-(b0 + b1 + bt))};
  if (marking.empty()) return FuchsianSystem::with_default_marking(poles, res, GaugeTag::sl2);
  return FuchsianSystem(poles, res, GaugeTag::sl2, marking);
}

void check_schlesinger_layout(const FuchsianSystem& S) {
  const bool ok = S.size() == 4 && S.gauge() == GaugeTag::sl2 && S.pole(0).same_as(SpherePoint(0.0)) &&
                  S.pole(1).same_as(SpherePoint(1.0)) && S.pole(2).is_finite() &&
                  !S.pole(2).same_as(SpherePoint(0.0)) && !S.pole(2).same_as(SpherePoint(1.0)) &&
                  S.pole(3).is_infinite();
  if (!ok) throw InvalidSystem("expected an sl2 system with poles 0, 1, t, infinity in that order");
}

std::array<Mat2, 3> schlesinger_rhs(const FuchsianSystem& S) {
  check_schlesinger_layout(S);
  const cplx t = S.pole(2).value();
  const Mat2 &B0 = S.residue(0), &B1 = S.residue(1), &Bt = S.residue(2);
  const Mat2 d0 = (Bt * B0 - B0 * Bt) / t;
  const Mat2 d1 = (Bt * B1 - B1 * Bt) / (t - 1.0);
  return {d0, d1, Mat2(-(d0 + d1))};
}

namespace {

cplx nearest_eigenvalue(const Mat2& m, cplx target) {
  const auto [e1, e2] = eigenvalues(m);
  return std::abs(e1 - target) <= std::abs(e2 - target) ? e1 : e2;
}

}  // namespace

SchlesingerTrajectory schlesinger_flow(const FuchsianSystem& S, cplx t1, const FlowOptions& opts) {
  check_schlesinger_layout(S);
  const cplx t0 = S.pole(2).value(), dt = t1 - t0;
  check_segment(t0, t1, opts.margin);

  auto pack = [](const Mat2& b0, const Mat2& b1, const Mat2& bt) {
    State y(12);
    const Mat2* m[3] = {&b0, &b1, &bt};
    for (int k = 0; k < 3; ++k)
      for (int e = 0; e < 4; ++e) y[4 * k + e] = (*m[k])(e / 2, e % 2);
    return y;
  };
  auto unpack = [](const State& y, int k) {
    Mat2 m;
    for (int e = 0; e < 4; ++e) m(e / 2, e % 2) = y[4 * k + e];
    return m;
  };

  const Rhs f = [&](const State& y, State& dy, double s) {
    const cplx t = t0 + s * dt;
    const Mat2 B0 = unpack(y, 0), B1 = unpack(y, 1), Bt = unpack(y, 2);
    const Mat2 d0 = (Bt * B0 - B0 * Bt) / t * dt;
    const Mat2 d1 = (Bt * B1 - B1 * Bt) / (t - 1.0) * dt;
    dy = pack(d0, d1, Mat2(-(d0 + d1)));
  };

  SchlesingerTrajectory traj;
  traj.t.push_back(t0);
  traj.systems.push_back(S);
  State y = pack(S.residue(0), S.residue(1), S.residue(2));
  std::vector<cplx> marking = S.marking();
  const std::size_t n = std::max<std::size_t>(opts.samples, 2);
  for (std::size_t k = 1; k < n; ++k) {
    const double sa = double(k - 1) / double(n - 1), sb = double(k) / double(n - 1);
    y = integrate(f, y, sa, sb, opts.integrate).y;
    const Mat2 B0 = unpack(y, 0), B1 = unpack(y, 1), Bt = unpack(y, 2);
    const Mat2 Binf = -(B0 + B1 + Bt);
    const Mat2* res[4] = {&B0, &B1, &Bt, &Binf};
    for (int i = 0; i < 4; ++i) marking[i] = nearest_eigenvalue(*res[i], marking[i]);
    traj.t.push_back(t0 + sb * dt);
    traj.systems.push_back(schlesinger_system(t0 + sb * dt, B0, B1, Bt, marking));
  }
  return traj;
}

PviParams pvi_params(const FuchsianSystem& S) {
  check_schlesinger_layout(S);
  return {2.0 * S.marked(0), 2.0 * S.marked(1), 2.0 * S.marked(2), 2.0 * S.marked(3) - 1.0};
}

namespace {

// Constant gauge C with C B_inf C^-1 = diag(lambda_inf, -lambda_inf).
Mat2 infinity_frame(const FuchsianSystem& S) {
  const Mat2& Binf = S.residue(3);
  const cplx mu = S.marked(3);
  if (std::abs(mu) < kDegenerateGap * std::max(1.0, norm(Binf)))
    throw DegenerateResidue("the (x, p) chart needs a nondegenerate residue at infinity");
  Mat2 V;
  V.col(0) = eigenline(Binf, mu);
  V.col(1) = eigenline(Binf, -mu);
  return V.inverse();
}

struct OffDiagonal {
  cplx b0, b1, bt;
  Mat2 C;
};

OffDiagonal off_diagonal(const FuchsianSystem& S) {
  OffDiagonal o;
  o.C = infinity_frame(S);
  const Mat2 Ci = o.C.inverse();
  o.b0 = (o.C * S.residue(0) * Ci)(0, 1);
  o.b1 = (o.C * S.residue(1) * Ci)(0, 1);
  o.bt = (o.C * S.residue(2) * Ci)(0, 1);
  return o;
}

}  // namespace

HamiltonianState xp_coordinates(const FuchsianSystem& S) {
  check_schlesinger_layout(S);
  const cplx t = S.pole(2).value();
  const OffDiagonal o = off_diagonal(S);
  const double scale = std::abs(o.b0) + std::abs(o.b1) + std::abs(o.bt);
  double size = 0.0;
  for (int i = 0; i < 3; ++i) size = std::max(size, norm(S.residue(i)));
  if (scale <= 1e-12 * std::max(1.0, size))
    throw DegenerateOffDiagonal("B(z)_12 vanishes identically (reducible, upper triangular)");
  // numerator of B_12: (b0 + b1 + bt) z^2 + c1 z + c0, leading term zero in this frame
  const cplx c1 = -(1.0 + t) * o.b0 - t * o.b1 - o.bt;
  const cplx c0 = t * o.b0;
  if (std::abs(c1) <= 1e-12 * scale * (1.0 + std::abs(t)))
    throw DegenerateOffDiagonal("B(z)_12 has no finite zero");
  HamiltonianState st;
  st.t = t;
  st.x = -c0 / c1;
  if (std::abs(st.x) < 1e-12 || std::abs(st.x - 1.0) < 1e-12 || std::abs(st.x - t) < 1e-12)
    throw SingularState("the zero of B_12 sits on a pole");
  const Mat2 Ci = o.C.inverse();
  const Mat2 Bx = o.C * evaluate(S, st.x) * Ci;
  st.p = Bx(0, 0) + S.marked(0) / st.x + S.marked(1) / (st.x - 1.0) + S.marked(2) / (st.x - t);
  return st;
}

cplx x_velocity(const FuchsianSystem& S) {
  check_schlesinger_layout(S);
  const cplx t = S.pole(2).value();
  const OffDiagonal o = off_diagonal(S);
  const auto d = schlesinger_rhs(S);
  const Mat2 Ci = o.C.inverse();
  const cplx e0 = (o.C * d[0] * Ci)(0, 1), e1 = (o.C * d[1] * Ci)(0, 1), et = (o.C * d[2] * Ci)(0, 1);
  const cplx c1 = -(1.0 + t) * o.b0 - t * o.b1 - o.bt;
  const cplx c0 = t * o.b0;
  const cplx dc1 = -o.b0 - (1.0 + t) * e0 - o.b1 - t * e1 - et;
  const cplx dc0 = o.b0 + t * e0;
  return -(dc0 * c1 - c0 * dc1) / (c1 * c1);
}

FuchsianSystem matrix_backlund(const FuchsianSystem& S) {
  check_schlesinger_layout(S);
  return pair_modify(S, {0, 1});
}

}  // namespace schles
