#include "schles/hypergeometric.hpp"

#include <algorithm>
#include <cmath>

namespace schles {

namespace {

bool near_integer(cplx x, double tol = 1e-9) {
  return std::abs(x.imag()) < tol && std::abs(x.real() - std::round(x.real())) < tol;
}

bool nonpositive_integer(cplx x) { return near_integer(x) && std::round(x.real()) <= 0.0; }

void check_tolerance(double tol) {
  if (!(tol >= 1e-14)) throw NonconvergentParams("series tolerance below 1e-14 is not reachable");
}

}  // namespace

std::vector<cplx> gauss_coefficients(const HypergeomParams& p, std::size_t count) {
  if (nonpositive_integer(p.c)) throw NonconvergentParams("c is a non-positive integer");
  std::vector<cplx> c;
  cplx cn = 1.0;
  for (std::size_t n = 0; n < count; ++n) {
    c.push_back(cn);
    const double m = static_cast<double>(n);
    cn *= (p.a + m) * (p.b + m) / ((p.c + m) * (m + 1.0));
  }
  return c;
}

SeriesValue gauss_2f1_series(const HypergeomParams& p, cplx z, double tol, double margin) {
  check_tolerance(tol);
  if (nonpositive_integer(p.c)) throw NonconvergentParams("c is a non-positive integer");
  if (std::abs(z) >= 1.0 - margin) throw OutOfDisk("|z| = " + std::to_string(std::abs(z)) +
                                                   " outside the disk of radius " +
                                                   std::to_string(1.0 - margin));
  const double az = std::abs(z), A = std::abs(p.a) + 1.0, B = std::abs(p.b) + 1.0,
               C = std::abs(p.c);
  SeriesValue s{0.0, 0.0, 0.0, 0};
  cplx cn = 1.0;
  cplx zn = 1.0, zn1 = 0.0, zn2 = 0.0;  // z^n, z^{n-1}, z^{n-2}
  for (std::size_t n = 0; n < 1'000'000; ++n) {
    const double m = static_cast<double>(n);
    s.f += cn * zn;
    s.df += m * cn * zn1;
    s.d2f += m * (m - 1.0) * cn * zn2;
    s.terms = n + 1;

    const cplx next = cn * (p.a + m) * (p.b + m) / ((p.c + m) * (m + 1.0));
    if (next == cplx(0.0)) return s;  // terminating series
    if (az == 0.0 && n >= 2) return s;
    // For k >= n+1 the coefficient ratio is bounded by
    // |z| (k+A)(k+B)/((k-C)(k+1)), decreasing in k since A, B >= 1.
    const double k = m + 1.0;
    if (k > C + 1.0 && n >= 2) {
      const double rho = az * (k + A) * (k + B) / ((k - C) * (k + 1.0)) * ((k + 1.0) / k) * ((k + 1.0) / k);
      if (rho < 1.0) {
        const double t = std::abs(next);
        const double t0 = t * std::pow(az, k);
        const double t1 = k * t * std::pow(az, k - 1.0);
        const double t2 = k * (k - 1.0) * t * std::pow(az, k - 2.0);
        const double g = 1.0 / (1.0 - rho);
        if (t0 * g <= tol * std::max(1.0, std::abs(s.f)) &&
            t1 * g <= tol * std::max(1.0, std::abs(s.df)) &&
            t2 * g <= tol * std::max(1.0, std::abs(s.d2f)))
          return s;
      }
    }
    cn = next;
    zn2 = zn1;
    zn1 = zn;
    zn *= z;
  }
  throw NonconvergentParams("series did not converge");
}

cplx gauss_2f1(const HypergeomParams& p, cplx z, double tol, double margin) {
  return gauss_2f1_series(p, z, tol, margin).f;
}

Ode2 hypergeometric_ode(const HypergeomParams& p) {
  Ode2 ode;
  ode.points = {0.0, 1.0};
  ode.p_res = {p.c, p.a + p.b + 1.0 - p.c};
  ode.q_double = {0.0, 0.0};
  ode.q_simple = {-p.a * p.b, p.a * p.b};
  return ode;
}

RiemannScheme3 hypergeometric_scheme(const HypergeomParams& p) {
  return RiemannScheme3({SpherePoint(0.0), SpherePoint(1.0), SpherePoint::infinity()},
                        {ExponentPair{0.0, 1.0 - p.c}, ExponentPair{0.0, p.c - p.a - p.b},
                         ExponentPair{p.a, p.b}});
}

GaussRelationReport verify_gauss_relation(const HypergeomParams& p, cplx z) {
  const cplx a = p.a, b = p.b, c = p.c;
  const cplx ap = a + 1.0 - c;
  if (std::abs(a) < 1e-12 || std::abs(ap) < 1e-12)
    throw NonconvergentParams("relation needs a != 0 and a + 1 - c != 0");
  GaussRelationReport r;

  const SeriesValue F = gauss_2f1_series(p, z);
  const cplx lhs1 = gauss_2f1({a + 1.0, b, c}, z);
  const cplx rhs1 = F.f + z / a * F.df;
  r.row1 = std::abs(lhs1 - rhs1) / std::max(1.0, std::abs(lhs1));

  // F2(a') = z^{1-c} G(z), G = F(a', b+1-c, 2-c)
  const SeriesValue G = gauss_2f1_series({ap, b + 1.0 - c, 2.0 - c}, z);
  const cplx G1 = gauss_2f1({ap + 1.0, b + 1.0 - c, 2.0 - c}, z);
  if (z == cplx(0.0)) {
    // common factor z^{1-c} removed
    const cplx rhs = a / ap * G.f + ((1.0 - c) * G.f + z * G.df) / ap;
    r.row2 = std::abs(G1 - rhs) / std::max(1.0, std::abs(G1));
    return r;
  }
  const cplx pre = std::pow(z, 1.0 - c);
  const cplx F2 = pre * G.f;
  const cplx dF2 = (1.0 - c) * pre / z * G.f + pre * G.df;
  const cplx lhs2 = pre * G1;
  const cplx rhs2 = a / ap * F2 + z / ap * dF2;
  r.row2 = std::abs(lhs2 - rhs2) / std::max(1.0, std::abs(lhs2));
  return r;
}

std::vector<SolutionExpression> kummer_solutions(const HypergeomParams& p) {
  for (cplx d : {1.0 - p.c, p.c - p.a - p.b, p.a - p.b})
    if (near_integer(d)) throw ResonantParameters("integer exponent difference");
  const Affine a = Affine::var(0), b = Affine::var(1), c = Affine::var(2), one = Affine::constant(1);
  const std::vector<std::array<Affine, 2>> exps = {{Affine{}, one - c}, {Affine{}, c - a - b}, {a, b}};
  auto list = build_expressions(FunctionKind::hypergeometric, exps, {p.a, p.b, p.c, 0.0});
  if (count_distinct(list) != 24) throw ResonantParameters("Kummer list does not have 24 distinct entries");
  return list;
}

}  // namespace schles
