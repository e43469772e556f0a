#include "schles/riemann.hpp"

#include <cmath>

namespace schles {

namespace {

void check_fuchs(cplx sum, cplx expected, double tol) {
  if (std::abs(sum - expected) > tol * std::max(1.0, std::abs(expected)))
    throw FuchsViolation("exponent sum " + std::to_string(sum.real()) + "+" +
                         std::to_string(sum.imag()) + "i, expected " +
                         std::to_string(expected.real()));
}

void check_distinct(const std::vector<SpherePoint>& pts) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (pts[i].same_as(pts[j])) throw InvalidSystem("scheme points must be distinct");
}

ExponentPair quadratic_roots(cplx b, cplx c) {
  // r^2 + b r + c = 0
  const cplx disc = std::sqrt(b * b - 4.0 * c);
  const cplx r1 = (-b + disc) / 2.0, r2 = (-b - disc) / 2.0;
  return {r1, r2};
}

}  // namespace

cplx ExponentTable::exponent_sum() const {
  cplx s = 0.0;
  for (const auto& e : exps) s += e.sigma + e.tau;
  return s;
}

RiemannScheme3::RiemannScheme3(std::array<SpherePoint, 3> poles, std::array<ExponentPair, 3> exps,
                               double tol)
    : poles_(poles), exps_(exps) {
  check_distinct({poles.begin(), poles.end()});
  check_fuchs(table().exponent_sum(), 1.0, tol);
}

ExponentTable RiemannScheme3::table() const {
  return {{poles_.begin(), poles_.end()}, {exps_.begin(), exps_.end()}};
}

RiemannScheme4::RiemannScheme4(cplx a, std::array<ExponentPair, 4> exps, cplx q, double tol)
    : a_(a), exps_(exps), q_(q) {
  if (std::abs(a) < kPoleSeparation || std::abs(a - 1.0) < kPoleSeparation)
    throw InvalidSystem("the fourth point a must differ from 0 and 1");
  check_fuchs(table().exponent_sum(), 2.0, tol);
}

ExponentTable RiemannScheme4::table() const {
  return {{SpherePoint(0.0), SpherePoint(1.0), SpherePoint(a_), SpherePoint::infinity()},
          {exps_.begin(), exps_.end()}};
}

cplx Ode2::p(cplx z) const {
  cplx s = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) s += p_res[i] / (z - points[i]);
  return s;
}

cplx Ode2::q(cplx z) const {
  cplx s = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const cplx u = 1.0 / (z - points[i]);
    s += q_double[i] * u * u + q_simple[i] * u;
  }
  return s;
}

cplx Ode2::dp(cplx z) const {
  cplx s = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const cplx u = 1.0 / (z - points[i]);
    s -= p_res[i] * u * u;
  }
  return s;
}

cplx Ode2::dq(cplx z) const {
  cplx s = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const cplx u = 1.0 / (z - points[i]);
    s -= 2.0 * q_double[i] * u * u * u + q_simple[i] * u * u;
  }
  return s;
}

double Ode2::residual(cplx z, cplx y, cplx dy, cplx d2y) const {
  const cplx a = p(z) * dy, b = q(z) * y;
  const double scale = std::abs(d2y) + std::abs(a) + std::abs(b);
  return scale == 0.0 ? 0.0 : std::abs(d2y + a + b) / scale;
}

Ode2 scheme_to_ode3(const RiemannScheme3& s) {
  const auto& P = s.poles();
  const auto& E = s.exps();
  Ode2 ode;
  int inf = -1;
  for (int i = 0; i < 3; ++i)
    if (P[i].is_infinite()) inf = i;

  if (inf < 0) {
    for (int i = 0; i < 3; ++i) {
      ode.points.push_back(P[i].value());
      ode.p_res.push_back(1.0 - E[i].sigma - E[i].tau);
      ode.q_double.push_back(E[i].sigma * E[i].tau);
      ode.q_simple.push_back(0.0);
    }
    // sigma_i tau_i (x_i - x_j)(x_i - x_k) / ((z - x_i)^2 (z - x_j)(z - x_k)) in partial fractions
    const auto& x = ode.points;
    for (int i = 0; i < 3; ++i) {
      const int j = (i + 1) % 3, k = (i + 2) % 3;
      const cplx st = E[i].sigma * E[i].tau;
      const cplx K = st * (x[i] - x[j]) * (x[i] - x[k]);
      ode.q_simple[i] += -st * (1.0 / (x[i] - x[j]) + 1.0 / (x[i] - x[k]));
      ode.q_simple[j] += K / ((x[j] - x[i]) * (x[j] - x[i]) * (x[j] - x[k]));
      ode.q_simple[k] += K / ((x[k] - x[i]) * (x[k] - x[i]) * (x[k] - x[j]));
    }
    return ode;
  }

  // Infinity at index inf: q = [s_u t_u d/(z-x_u) - s_v t_v d/(z-x_v) + s_inf t_inf] / ((z-x_u)(z-x_v)),
  // d = x_u - x_v.
  const int u = (inf + 1) % 3, v = (inf + 2) % 3;
  const cplx xu = P[u].value(), xv = P[v].value(), d = xu - xv;
  const cplx su = E[u].sigma * E[u].tau, sv = E[v].sigma * E[v].tau,
             sinf = E[inf].sigma * E[inf].tau;
  const cplx c = (-su - sv + sinf) / d;
  ode.points = {xu, xv};
  ode.p_res = {1.0 - E[u].sigma - E[u].tau, 1.0 - E[v].sigma - E[v].tau};
  ode.q_double = {su, sv};
  ode.q_simple = {c, -c};
  return ode;
}

Ode2 heun_ode(cplx a, cplx q, cplx alpha_beta, cplx gamma, cplx delta, cplx epsilon) {
  Ode2 ode;
  ode.points = {0.0, 1.0, a};
  ode.p_res = {gamma, delta, epsilon};
  ode.q_double = {0.0, 0.0, 0.0};
  // ab (x_i - q) / prod_{j != i} (x_i - x_j)
  ode.q_simple = {alpha_beta * (-q) / a, alpha_beta * (1.0 - q) / (1.0 - a),
                  alpha_beta * (a - q) / (a * (a - 1.0))};
  return ode;
}

ExponentPair indicial_roots(const Ode2& ode, std::size_t i) {
  return quadratic_roots(ode.p_res.at(i) - 1.0, ode.q_double.at(i));
}

ExponentPair indicial_roots_at_infinity(const Ode2& ode) {
  cplx sa = 0.0, q_inf = 0.0;
  for (std::size_t i = 0; i < ode.points.size(); ++i) {
    sa += ode.p_res[i];
    q_inf += ode.q_double[i] + ode.q_simple[i] * ode.points[i];
  }
  return quadratic_roots(1.0 - sa, q_inf);
}

NormalizedScheme normalize_scheme(const ExponentTable& t) {
  int inf = -1;
  for (std::size_t i = 0; i < t.points.size(); ++i)
    if (t.points[i].is_infinite()) {
      if (inf >= 0) throw InvalidSystem("scheme lists infinity twice");
      inf = static_cast<int>(i);
    }
  if (inf < 0) throw InvalidSystem("normalization needs infinity among the scheme points");

  NormalizedScheme out;
  out.scheme.points = t.points;
  cplx shift = 0.0;
  for (std::size_t i = 0; i < t.points.size(); ++i) {
    if (static_cast<int>(i) == inf) {
      out.prefactor.push_back(0.0);
      out.scheme.exps.push_back({});
      continue;
    }
    const auto& e = t.exps[i];
    out.prefactor.push_back(e.sigma);
    out.scheme.exps.push_back({0.0, e.tau - e.sigma});
    shift += e.sigma;
  }
  out.scheme.exps[inf] = {t.exps[inf].sigma + shift, t.exps[inf].tau + shift};
  return out;
}

RiemannScheme3 normalize_scheme(const RiemannScheme3& s, std::vector<cplx>* prefactor) {
  const auto n = normalize_scheme(s.table());
  if (prefactor) *prefactor = n.prefactor;
  return RiemannScheme3(s.poles(), {n.scheme.exps[0], n.scheme.exps[1], n.scheme.exps[2]});
}

ExponentTable lambda_table(cplx l0, cplx l1, cplx linf) {
  return {{SpherePoint(0.0), SpherePoint(1.0), SpherePoint::infinity()},
          {{l0, -l0}, {l1, -l1}, {linf, -linf}}};
}

}  // namespace schles
