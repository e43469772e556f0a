#include "schles/heun.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace schles {

namespace {

bool near_integer(cplx x, double tol = 1e-9) {
  return std::abs(x.imag()) < tol && std::abs(x.real() - std::round(x.real())) < tol;
}

void check_params(const HeunParams& p) {
  if (std::abs(p.a) < kPoleSeparation || std::abs(p.a - 1.0) < kPoleSeparation)
    throw InvalidSystem("Heun point a must differ from 0 and 1");
  if (near_integer(p.gamma) && std::round(p.gamma.real()) <= 0.0)
    throw NonconvergentParams("gamma is a non-positive integer");
}

// c_{j+1} from c_j, c_{j-1}.
cplx next_coefficient(const HeunParams& p, std::size_t j, cplx cj, cplx cjm1) {
  const double m = static_cast<double>(j);
  const cplx eps = p.epsilon();
  const cplx rhs = (p.q_std() + m * ((m - 1.0 + p.gamma) * (1.0 + p.a) + p.a * p.delta + eps)) * cj -
                   (m - 1.0 + p.alpha) * (m - 1.0 + p.beta) * cjm1;
  return rhs / (p.a * (m + 1.0) * (m + p.gamma));
}

}  // namespace

RiemannScheme4 HeunParams::scheme() const {
  return RiemannScheme4(a, {ExponentPair{0.0, 1.0 - gamma}, ExponentPair{0.0, 1.0 - delta},
                            ExponentPair{0.0, 1.0 - epsilon()}, ExponentPair{alpha, beta}},
                        q);
}

Ode2 HeunParams::ode() const { return heun_ode(a, q, alpha * beta, gamma, delta, epsilon()); }

std::vector<cplx> heun_coefficients(const HeunParams& p, std::size_t count) {
  check_params(p);
  std::vector<cplx> c;
  cplx prev = 0.0, cur = 1.0;
  for (std::size_t j = 0; j < count; ++j) {
    c.push_back(cur);
    const cplx nxt = next_coefficient(p, j, cur, prev);
    prev = cur;
    cur = nxt;
  }
  return c;
}

SeriesValue heun_partial_sum(const HeunParams& p, cplx z, std::size_t terms) {
  const auto c = heun_coefficients(p, terms);
  SeriesValue s{0.0, 0.0, 0.0, terms};
  // Horner in z for F, F', F''
  for (std::size_t k = terms; k-- > 0;) {
    const double m = static_cast<double>(k);
    s.f = s.f * z + c[k];
    if (k >= 1) s.df = s.df * z + m * c[k];
    if (k >= 2) s.d2f = s.d2f * z + m * (m - 1.0) * c[k];
  }
  return s;
}

SeriesValue heun_series(const HeunParams& p, cplx z, double tol, double margin) {
  if (!(tol >= 1e-14)) throw NonconvergentParams("series tolerance below 1e-14 is not reachable");
  check_params(p);
  const double radius = std::min(1.0, std::abs(p.a));
  const double az = std::abs(z);
  if (az >= radius - margin)
    throw OutOfDisk("|z| = " + std::to_string(az) + " outside the disk of radius " +
                    std::to_string(radius - margin));

  SeriesValue s{0.0, 0.0, 0.0, 0};
  cplx prev = 0.0, cur = 1.0;
  cplx zn = 1.0, zn1 = 0.0, zn2 = 0.0;
  double t_prev = 0.0, t_prev2 = 0.0;
  for (std::size_t n = 0; n < 200'000; ++n) {
    const double m = static_cast<double>(n);
    s.f += cur * zn;
    s.df += m * cur * zn1;
    s.d2f += m * (m - 1.0) * cur * zn2;
    s.terms = n + 1;
    if (az == 0.0 && n >= 2) return s;

    const double t = std::abs(cur) * std::pow(az, m);
    if (n >= 8) {
      // Geometric tail estimate: the coefficient ratio tends to 1/radius.
      double rho = az / radius * (1.0 + 4.0 / m);
      if (t_prev > 0.0) rho = std::max(rho, t / t_prev);
      if (t_prev2 > 0.0 && t_prev > 0.0) rho = std::max(rho, t_prev / t_prev2);
      rho *= ((m + 2.0) / (m + 1.0)) * ((m + 2.0) / (m + 1.0));
      if (rho < 1.0) {
        const double g = rho / (1.0 - rho);
        const double t1 = (m + 1.0) * t / az, t2 = (m + 1.0) * m * t / (az * az);
        if (t * g <= tol * std::max(1.0, std::abs(s.f)) &&
            t1 * g <= tol * std::max(1.0, std::abs(s.df)) &&
            t2 * g <= tol * std::max(1.0, std::abs(s.d2f)))
          return s;
      }
    }
    t_prev2 = t_prev;
    t_prev = t;
    const cplx nxt = next_coefficient(p, n, cur, prev);
    prev = cur;
    cur = nxt;
    zn2 = zn1;
    zn1 = zn;
    zn *= z;
  }
  throw NonconvergentParams("Heun series did not converge");
}

namespace {

std::vector<std::array<Affine, 2>> heun_exponents() {
  const Affine al = Affine::var(0), be = Affine::var(1), ga = Affine::var(2), de = Affine::var(3);
  const Affine one = Affine::constant(1);
  const Affine eps = al + be + one - ga - de;
  return {{Affine{}, one - ga}, {Affine{}, one - de}, {Affine{}, one - eps}, {al, be}};
}

void check_generic(const HeunParams& p) {
  for (cplx d : {1.0 - p.gamma, 1.0 - p.delta, 1.0 - p.epsilon(), p.alpha - p.beta})
    if (near_integer(d)) throw ResonantParameters("integer exponent difference");
}

}  // namespace

std::vector<SolutionExpression> heun_expressions(const HeunParams& p) {
  check_params(p);
  check_generic(p);
  auto list = build_expressions(FunctionKind::heun, heun_exponents(),
                                {p.alpha, p.beta, p.gamma, p.delta}, p.a, p.q);
  if (count_distinct(list) != 192) throw ResonantParameters("Heun list does not have 192 distinct entries");
  return list;
}

std::vector<LabeledExpression> heun_local_solutions(const HeunParams& p) {
  check_params(p);
  check_generic(p);
  const auto all = build_expressions(FunctionKind::heun, heun_exponents(),
                                     {p.alpha, p.beta, p.gamma, p.delta}, p.a, p.q);
  const SpherePoint P0(0.0), P1(1.0), Pa(p.a), Pinf = SpherePoint::infinity();
  const auto exps = heun_exponents();
  auto point_index = [&](const SpherePoint& x) {
    if (x.is_infinite()) return 3;
    if (x.same_as(P0)) return 0;
    if (x.same_as(P1)) return 1;
    return 2;
  };
  // Picks the entry with the given point assignment whose exponent at w = 0
  // is `rho0` and which uses the first listed exponent at w = 1 and w = a'.
  auto pick = [&](const std::string& label, const SpherePoint& to0, const SpherePoint& to1,
                  const SpherePoint& toinf, int r0) {
    const int i0 = point_index(to0), i1 = point_index(to1);
    int ia = 0;
    for (int k = 0; k < 4; ++k)
      if (k != i0 && k != i1 && k != point_index(toinf)) ia = k;
    for (const auto& e : all) {
      if (!e.to0.same_as(to0) || !e.to1.same_as(to1) || !e.toinf.same_as(toinf)) continue;
      const Affine R = exps[i0][r0] + exps[i1][0] + exps[ia][0];
      if (e.params[0] == exps[point_index(toinf)][0] + R &&
          e.params[2] == Affine::constant(1) + exps[i0][r0] - exps[i0][1 - r0])
        return LabeledExpression{label, e};
    }
    throw InvalidSystem("local solution " + label + " not found");
  };
  return {
      pick("y^hol_0", P0, P1, Pinf, 0),
      pick("y^{1-gamma}_0", P0, P1, Pinf, 1),
      pick("y^hol_1", P1, P0, Pinf, 0),
      pick("y^{1-delta}_1", P1, P0, Pa, 1),
      pick("y^hol_a", Pa, P0, Pinf, 0),
      pick("y^{1-epsilon}_a", Pa, P0, Pinf, 1),
      pick("y^alpha_inf", Pinf, P1, P0, 0),
      pick("y^beta_inf", Pinf, P1, P0, 1),
  };
}

HeunRelationReport verify_heun_relation(const HeunParams& p, cplx z) {
  check_params(p);
  const cplx eps = p.epsilon();
  if (std::abs(p.gamma) < 1e-12 || std::abs(eps - 1.0) < 1e-12)
    throw NonconvergentParams("relation needs gamma != 0 and epsilon != 1");
  const cplx ab = p.alpha * p.beta;
  HeunRelationReport r;

  const SeriesValue F = heun_series(p, z);
  // F''' from the equation F'' = -P F' - Q F
  const Ode2 ode = p.ode();
  const cplx F3 = -ode.dp(z) * F.df - ode.p(z) * F.d2f - ode.dq(z) * F.f - ode.q(z) * F.df;
  const cplx g = (eps - 1.0) * F.f + (z - p.a) * F.df;
  const cplx dg = eps * F.df + (z - p.a) * F.d2f;
  const cplx d2g = (eps + 1.0) * F.d2f + (z - p.a) * F3;

  // As printed.
  r.q_printed = p.q + p.a * (p.gamma + p.delta) / ab - p.gamma / ab;
  const HeunParams shifted{p.a, r.q_printed, p.alpha, p.beta, p.gamma + 1.0, p.delta + 1.0};
  const cplx lhs = ((eps - 1.0) - ab / p.gamma * p.q) * heun_series(shifted, z).f;
  r.residual_as_stated = std::abs(lhs - g) / std::max(1.0, std::abs(g));

  // Fit: g_n = (eps - 1 + n) c_n - a (n+1) c_{n+1}; impose the Heun recurrence
  // with gamma+1, delta+1 and unknowns (eps', A = alpha'beta', Q = A q^).
  const int rows = 16;
  const auto c = heun_coefficients(p, rows + 2);
  std::vector<cplx> gn(rows + 1);
  for (int n = 0; n <= rows; ++n) gn[n] = (eps - 1.0 + double(n)) * c[n] - p.a * double(n + 1) * c[n + 1];
  const cplx g1 = p.gamma + 1.0, d1 = p.delta + 1.0, a = p.a;
  Eigen::MatrixXcd M(rows, 3);
  Eigen::VectorXcd rhs(rows);
  const double w = 0.5 * std::min(1.0, std::abs(a));
  for (int n = 0; n < rows; ++n) {
    const double m = n;
    const cplx gm = n > 0 ? gn[n - 1] : cplx(0.0), g0 = gn[n], gp = gn[n + 1];
    const cplx known = (m - 1.0) * (m - 2.0) * gm - (1.0 + a) * m * (m - 1.0) * g0 + a * (m + 1.0) * m * gp +
                       g1 * ((m - 1.0) * gm - (1.0 + a) * m * g0 + a * (m + 1.0) * gp) +
                       d1 * ((m - 1.0) * gm - a * m * g0);
    const double weight = std::pow(w, m);
    M(n, 0) = weight * ((m - 1.0) * gm - m * g0);
    M(n, 1) = weight * gm;
    M(n, 2) = -weight * g0;
    rhs(n) = -weight * known;
  }
  const Eigen::VectorXcd sol = M.colPivHouseholderQr().solve(rhs);
  r.taylor_misfit = (M * sol - rhs).norm() / std::max(1e-300, rhs.norm());
  r.epsilon_fit = sol(0);
  r.alpha_beta_fit = sol(1);
  r.q_fit = sol(2) / sol(1);
  const Ode2 fitted = heun_ode(a, r.q_fit, r.alpha_beta_fit, g1, d1, r.epsilon_fit);
  r.fit_residual = fitted.residual(z, g, dg, d2g);
  // exponents of g: {0, -gamma}, {0, -delta}, {0, 2 - eps}, {alpha, beta}
  r.exponent_sum = -p.gamma - p.delta + 2.0 - eps + p.alpha + p.beta;
  return r;
}

double verify_heun_second_row(const HeunParams& p, cplx z) {
  check_params(p);
  if (near_integer(p.gamma)) throw ResonantParameters("gamma is an integer: the two branches at 0 collide");
  if (z == cplx(0.0)) throw OutOfDisk("the second row is evaluated away from z = 0");
  const cplx eps = p.epsilon();
  const cplx ab = p.alpha * p.beta;
  const cplx D = eps - 1.0 - ab / p.gamma * p.q;
  const cplx qp = p.q + p.a * (p.gamma + p.delta) / ab - p.gamma / ab;
  const cplx pre = std::pow(z, 1.0 - p.gamma);

  // F2 = z^{1-gamma} F(q | alpha+1-gamma, beta+1-gamma, gamma, delta | z), as printed
  const SeriesValue H =
      heun_series({p.a, p.q, p.alpha + 1.0 - p.gamma, p.beta + 1.0 - p.gamma, p.gamma, p.delta}, z);
  const cplx F2 = pre * H.f;
  const cplx dF2 = (1.0 - p.gamma) * pre / z * H.f + pre * H.df;
  const cplx rhs = ((eps - 1.0 - (1.0 - p.a / z) * (1.0 - p.gamma)) * F2 + (z - p.a) * dF2) / D;
  const cplx lhs =
      pre * heun_series({p.a, qp, p.alpha - p.gamma, p.beta - p.gamma, p.gamma + 1.0, p.delta + 1.0}, z).f;
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

}  // namespace schles
