#include <algorithm>

#include "schles/expression.hpp"
#include "schles/hypergeometric.hpp"
#include "schles/riemann.hpp"
#include <functional>

#include "support.hpp"

using namespace schles;
using namespace schles::test;

namespace {

// Laurent coefficient of f at x: (1/2 pi i) * integral of f(z) (z-x)^(k-1) dz
// over a small circle, i.e. the coefficient of (z-x)^-k.
cplx laurent_coeff(const std::function<cplx(cplx)>& f, cplx x, int k, double r = 0.05) {
  const int nodes = 256;
  cplx acc = 0.0;
  for (int m = 0; m < nodes; ++m) {
    const cplx u = std::polar(r, 2.0 * kPi * m / nodes);
    acc += f(x + u) * std::pow(u, k);
  }
  return acc / static_cast<double>(nodes);
}

bool same_pair(ExponentPair a, ExponentPair b, double tol) {
  return (dist(a.sigma, b.sigma) < tol && dist(a.tau, b.tau) < tol) ||
         (dist(a.sigma, b.tau) < tol && dist(a.tau, b.sigma) < tol);
}

ExponentPair roots(cplx b, cplx c) {  // r^2 + b r + c = 0
  const cplx d = std::sqrt(b * b - 4.0 * c);
  return {(-b + d) / 2.0, (-b - d) / 2.0};
}

cplx crand(Rng& rng, double r) {
  std::uniform_real_distribution<double> u(-r, r);
  return {u(rng), u(rng)};
}

}  // namespace

// ---------------------------------------------------------------------------
// Riemann schemes

TEST_CASE("Fuchs relation is enforced on construction") {
  const std::array<SpherePoint, 3> pts = {SpherePoint(0.0), SpherePoint(1.0), SpherePoint::infinity()};
  CHECK_THROWS_AS(RiemannScheme3(pts, {ExponentPair{0.0, 0.3}, {0.0, 0.2}, {0.1, 0.2}}), FuchsViolation);
  CHECK_NOTHROW(RiemannScheme3(pts, {ExponentPair{0.0, 0.3}, {0.0, 0.2}, {0.1, 0.4}}));
  CHECK_THROWS_AS(RiemannScheme4(3.0, {ExponentPair{0.0, 0.3}, {0.0, 0.2}, {0.0, 0.4}, {0.1, 0.2}}, 0.0),
                  FuchsViolation);
  CHECK_THROWS(RiemannScheme4(1.0, {ExponentPair{0.0, 0.3}, {0.0, 0.2}, {0.0, 0.4}, {0.1, 1.0}}, 0.0));
  CHECK_THROWS(RiemannScheme3({SpherePoint(0.0), SpherePoint(0.0), SpherePoint::infinity()},
                              {ExponentPair{0.0, 0.3}, {0.0, 0.2}, {0.1, 0.4}}));
}

TEST_CASE("scheme of 2F1 gives the hypergeometric equation") {
  const HypergeomParams p{cplx(0.3, 0.1), 0.7, cplx(1.4, -0.2)};
  const Ode2 ode = scheme_to_ode3(hypergeometric_scheme(p));
  Rng rng(51);
  for (int k = 0; k < 5; ++k) {
    const cplx z = cplx(0.5, 0.5) + crand(rng, 0.4);
    // z(1-z) y'' + [c - (a+b+1) z] y' - ab y = 0
    const cplx P = (p.c - (p.a + p.b + 1.0) * z) / (z * (1.0 - z));
    const cplx Q = -p.a * p.b / (z * (1.0 - z));
    CHECK(dist(ode.p(z), P) < 1e-13);
    CHECK(dist(ode.q(z), Q) < 1e-13);
  }
}

TEST_CASE("indicial roots of random schemes match the stored exponents") {
  Rng rng(52);
  for (int trial = 0; trial < 10; ++trial) {
    const bool with_inf = trial % 2 == 0;
    const std::array<SpherePoint, 3> pts = {SpherePoint(cplx(0.0, 0.0) + crand(rng, 0.2)),
                                            SpherePoint(cplx(1.0, 0.3) + crand(rng, 0.2)),
                                            with_inf ? SpherePoint::infinity()
                                                     : SpherePoint(cplx(-0.8, 1.1) + crand(rng, 0.2))};
    std::array<ExponentPair, 3> e;
    cplx sum = 0.0;
    for (int k = 0; k < 3; ++k) {
      e[k] = {crand(rng, 0.8), crand(rng, 0.8)};
      sum += e[k].sigma + e[k].tau;
    }
    e[2].tau += 1.0 - sum;
    const RiemannScheme3 s(pts, e);
    const Ode2 ode = scheme_to_ode3(s);
    auto P = [&](cplx z) { return ode.p(z); };
    auto Q = [&](cplx z) { return ode.q(z); };
    for (int k = 0; k < 3; ++k) {
      if (pts[k].is_infinite()) {
        // p ~ p_inf / z and q ~ q_inf / z^2 at infinity; a big circle picks
        // up the sum of all residues.
        cplx p_inf = 0.0, q_inf = 0.0;
        const int nodes = 512;
        const double R = 50.0;
        for (int m = 0; m < nodes; ++m) {
          const cplx z = std::polar(R, 2.0 * kPi * m / nodes);
          p_inf += ode.p(z) * z;
          q_inf += ode.q(z) * z * z;
        }
        p_inf /= static_cast<double>(nodes);
        q_inf /= static_cast<double>(nodes);
        CHECK(same_pair(roots(1.0 - p_inf, q_inf), e[k], 1e-10));
        CHECK(same_pair(indicial_roots_at_infinity(ode), e[k], 1e-10));
      } else {
        const cplx x = pts[k].value();
        const cplx p1 = laurent_coeff(P, x, 1), q2 = laurent_coeff(Q, x, 2);
        // r(r-1) + p_{-1} r + q_{-2} = 0
        CHECK(same_pair(roots(p1 - 1.0, q2), e[k], 1e-10));
        std::size_t idx = 0;
        for (std::size_t m = 0; m < ode.points.size(); ++m)
          if (dist(ode.points[m], x) < 1e-14) idx = m;
        CHECK(same_pair(indicial_roots(ode, idx), e[k], 1e-10));
      }
    }
  }
}

TEST_CASE("pure power exponents at a finite pole") {
  // y = z^s (z-1)^{-s}: exponents {s, 0} at 0, {-s, 0} at 1, {0, 1} at infinity
  const cplx s(0.37, 0.0);
  const RiemannScheme3 r({SpherePoint(0.0), SpherePoint(1.0), SpherePoint::infinity()},
                         {ExponentPair{s, 0.0}, {-s, 0.0}, {0.0, 1.0}});
  const Ode2 ode = scheme_to_ode3(r);
  CHECK(same_pair(indicial_roots(ode, 0), {s, 0.0}, 1e-12));
  const cplx z(0.3, 0.2);
  const cplx y = std::pow(z, s) * std::pow(z - 1.0, -s);
  const cplx dy = y * (s / z - s / (z - 1.0));
  const cplx d2y = dy * (s / z - s / (z - 1.0)) + y * (-s / (z * z) + s / ((z - 1.0) * (z - 1.0)));
  CHECK(ode.residual(z, y, dy, d2y) < 1e-13);
}

TEST_CASE("normalize_scheme: the displayed table") {
  Rng rng(53);
  std::array<ExponentPair, 3> e;
  cplx sum = 0.0;
  for (auto& x : e) {
    x = {crand(rng, 0.7), crand(rng, 0.7)};
    sum += x.sigma + x.tau;
  }
  e[2].tau += 1.0 - sum;
  const RiemannScheme3 s({SpherePoint(0.0), SpherePoint(1.0), SpherePoint::infinity()}, e);
  std::vector<cplx> pre;
  const RiemannScheme3 n = normalize_scheme(s, &pre);
  const cplx s0 = e[0].sigma, s1 = e[1].sigma;
  CHECK(dist(n.exps()[0].sigma, 0.0) == 0.0);
  CHECK(dist(n.exps()[0].tau, e[0].tau - s0) < 1e-15);
  CHECK(dist(n.exps()[1].tau, e[1].tau - s1) < 1e-15);
  CHECK(dist(n.exps()[2].sigma, e[2].sigma + s0 + s1) < 1e-15);
  CHECK(dist(n.exps()[2].tau, e[2].tau + s0 + s1) < 1e-15);
  CHECK(dist(pre[0], s0) == 0.0);
  CHECK(dist(pre[1], s1) == 0.0);
  CHECK(dist(n.table().exponent_sum(), 1.0) < 1e-14);

  std::vector<cplx> pre2;
  normalize_scheme(n, &pre2);
  for (cplx x : pre2) CHECK(x == cplx(0.0));
}

TEST_CASE("normalize_scheme: eigenvalue form") {
  const cplx l0(0.21, 0.03), l1 = 0.34, li = 0.12;
  const NormalizedScheme n = normalize_scheme(lambda_table(l0, l1, li));
  const auto& x = n.scheme.exps;
  CHECK(dist(x[0].sigma, 0.0) < 1e-15);
  CHECK(dist(x[0].tau, -2.0 * l0) < 1e-15);
  CHECK(dist(x[1].tau, -2.0 * l1) < 1e-15);
  CHECK(dist(x[2].sigma, l0 + l1 + li) < 1e-15);
  // the rule gives l0 + l1 - l_inf in the last slot; the printed table has
  // -l0 - l1 - l_inf, which would not keep the exponent sum
  CHECK(dist(x[2].tau, l0 + l1 - li) < 1e-15);
  CHECK(dist(n.scheme.exponent_sum(), lambda_table(l0, l1, li).exponent_sum()) < 1e-15);
  const cplx printed_sum = -2.0 * l0 - 2.0 * l1 + (l0 + l1 + li) + (-l0 - l1 - li);
  CHECK(dist(printed_sum, 0.0) > 0.1);
}

// ---------------------------------------------------------------------------
// Gauss function

TEST_CASE("2F1 closed forms") {
  CHECK(gauss_2f1({0.3, 0.8, 1.7}, 0.0) == cplx(1.0));
  CHECK(dist(gauss_2f1({1.0, 1.0, 2.0}, 0.5), 2.0 * std::log(2.0)) < 1e-14);
  const cplx z(0.3, -0.4), a(0.7, 0.2);
  // F(a, b; b; z) = (1-z)^-a
  CHECK(dist(gauss_2f1({a, 1.3, 1.3}, z), std::pow(1.0 - z, -a)) < 1e-14);
  // F(1/2, 1/2; 3/2; z^2) = asin(z)/z
  const cplx w(0.4, 0.3);
  CHECK(dist(gauss_2f1({0.5, 0.5, 1.5}, w * w), std::asin(w) / w) < 1e-14);
  // terminating series
  CHECK(dist(gauss_2f1({-2.0, 1.5, 0.5}, z), 1.0 - 6.0 * z + 5.0 * z * z) < 1e-14);
}

TEST_CASE("2F1 symmetry in a and b") {
  Rng rng(54);
  for (int k = 0; k < 10; ++k) {
    const HypergeomParams p = random_gauss_params(rng);
    const auto c1 = gauss_coefficients(p, 60), c2 = gauss_coefficients({p.b, p.a, p.c}, 60);
    for (std::size_t n = 0; n < c1.size(); ++n) CHECK(c1[n] == c2[n]);
    const cplx z = crand(rng, 0.5);
    CHECK(dist(gauss_2f1(p, z), gauss_2f1({p.b, p.a, p.c}, z)) < 1e-14 * std::max(1.0, std::abs(gauss_2f1(p, z))));
  }
}

TEST_CASE("2F1 derivatives match the shifted function") {
  // F' = (ab/c) F(a+1, b+1; c+1)
  const HypergeomParams p{cplx(0.4, 0.1), -0.6, cplx(1.3, 0.2)};
  const cplx z(0.2, 0.35);
  const SeriesValue s = gauss_2f1_series(p, z);
  const cplx k1 = p.a * p.b / p.c;
  const cplx k2 = k1 * (p.a + 1.0) * (p.b + 1.0) / (p.c + 1.0);
  CHECK(dist(s.df, k1 * gauss_2f1({p.a + 1.0, p.b + 1.0, p.c + 1.0}, z)) < 1e-13);
  CHECK(dist(s.d2f, k2 * gauss_2f1({p.a + 2.0, p.b + 2.0, p.c + 2.0}, z)) < 1e-13);
}

TEST_CASE("2F1 preconditions") {
  CHECK_THROWS_AS(gauss_2f1({0.3, 0.4, 0.5}, 0.85), OutOfDisk);
  CHECK_NOTHROW(gauss_2f1({0.3, 0.4, 0.5}, 0.85, 1e-14, 0.1));
  CHECK_THROWS_AS(gauss_2f1({0.3, 0.4, -1.0}, 0.2), NonconvergentParams);
  CHECK_THROWS_AS(gauss_2f1({0.3, 0.4, 0.5}, 0.2, 1e-16), NonconvergentParams);
}

TEST_CASE("Gauss relation") {
  SUBCASE("at z = 0") {
    const auto r = verify_gauss_relation({0.5, 0.7, 1.3}, 0.0);
    CHECK(r.max() < 1e-15);
  }
  SUBCASE("at z = 0.2 and z = 0.1") {
    CHECK(verify_gauss_relation({0.5, 0.7, 1.3}, 0.2).max() < 1e-12);
    CHECK(verify_gauss_relation({0.5, 0.7, 1.3}, 0.1).row2 < 1e-12);
  }
  SUBCASE("random parameters") {
    Rng rng(55);
    for (int k = 0; k < 20; ++k) {
      const HypergeomParams p = random_gauss_params(rng);
      for (cplx z : {cplx(0.1), cplx(0.0, 0.3), cplx(-0.25)}) CHECK(verify_gauss_relation(p, z).max() < 1e-12);
    }
  }
  SUBCASE("excluded parameters") {
    CHECK_THROWS_AS(verify_gauss_relation({0.0, 0.7, 1.3}, 0.1), NonconvergentParams);
    CHECK_THROWS_AS(verify_gauss_relation({0.3, 0.7, 1.3}, 0.1), NonconvergentParams);
  }
}

// ---------------------------------------------------------------------------
// Kummer's solutions

namespace {

bool has_expression(const std::vector<SolutionExpression>& list, const std::string& map,
                    std::array<cplx, 3> pre, std::array<cplx, 3> params) {
  for (const auto& e : list) {
    if (e.map_text != map) continue;
    const auto px = e.prefactor_values();
    const auto v = e.param_values();
    bool ok = true;
    for (int k = 0; k < 3; ++k) ok = ok && dist(px[k], pre[k]) < 1e-12;
    const bool ab = (dist(v[0], params[0]) < 1e-12 && dist(v[1], params[1]) < 1e-12) ||
                    (dist(v[0], params[1]) < 1e-12 && dist(v[1], params[0]) < 1e-12);
    if (ok && ab && dist(v[2], params[2]) < 1e-12) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("Kummer's 24 solutions") {
  const HypergeomParams p{cplx(0.31, 0.07), cplx(0.52, -0.11), cplx(1.23, 0.05)};
  const cplx a = p.a, b = p.b, c = p.c;
  const auto list = kummer_solutions(p);
  CHECK(list.size() == 24);
  CHECK(count_distinct(list) == 24);

  // the displayed local solutions
  CHECK(has_expression(list, "z", {0.0, 0.0, 0.0}, {a, b, c}));
  CHECK(has_expression(list, "z", {1.0 - c, 0.0, 0.0}, {a - c + 1.0, b - c + 1.0, 2.0 - c}));
  CHECK(has_expression(list, "1-z", {0.0, 0.0, 0.0}, {a, b, a + b + 1.0 - c}));
  CHECK(has_expression(list, "1-z", {0.0, c - a - b, 0.0}, {c - a, c - b, c - a - b + 1.0}));
  CHECK(has_expression(list, "1/z", {-a, 0.0, 0.0}, {a, a - c + 1.0, a - b + 1.0}));
  CHECK(has_expression(list, "1/z", {-b, 0.0, 0.0}, {b, b - c + 1.0, b - a + 1.0}));

  bool found = false;
  for (const auto& e : list) found = found || e.str() == "F(a, b, a+b-c+1 | 1-z)";
  CHECK(found);

  const Ode2 ode = hypergeometric_ode(p);
  const cplx common(0.17, 0.05);
  for (const auto& e : list) {
    const cplx z = sample_point(e);
    const SeriesValue y = evaluate(e, z);
    CHECK(ode.residual(z, y.f, y.df, y.d2f) < 1e-8);
    if (std::abs(e.map(common)) < 0.75) {
      const SeriesValue w = evaluate(e, common);
      CHECK(ode.residual(common, w.f, w.df, w.d2f) < 1e-8);
    }
  }
}

TEST_CASE("the identity expression is the Gauss series") {
  const HypergeomParams p{0.3, 0.6, 1.1};
  const auto list = kummer_solutions(p);
  const cplx z(0.2, 0.1);
  CHECK(dist(evaluate(list[0], z).f, gauss_2f1(p, z)) < 1e-14);
}

TEST_CASE("Kummer's list rejects resonant parameters") {
  CHECK_THROWS_AS(kummer_solutions({0.3, 0.6, 1.0}), ResonantParameters);
  CHECK_THROWS_AS(kummer_solutions({0.3, 1.3, 1.7}), ResonantParameters);
}
