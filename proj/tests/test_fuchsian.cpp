#include "schles/fuchsian.hpp"
#include "support.hpp"

using namespace schles;
using namespace schles::test;

TEST_CASE("evaluate: one pole at the origin") {
  const cplx l = 0.3;
  const auto S = FuchsianSystem::local({SpherePoint(0.0)}, {diag(l, -l)}, GaugeTag::sl2, {l});
  CHECK(dist(evaluate(S, 2.0), diag(l / 2.0, -l / 2.0)) < 1e-15);
}

TEST_CASE("evaluate: B_1 = -B_0 gives 4 B_0 at z = 1/2") {
  const Mat2 b0 = mat(0.2, 0.5, 0.1, -0.2);
  const auto S = FuchsianSystem::with_default_marking({SpherePoint(0.0), SpherePoint(1.0)}, {b0, -b0},
                                                      GaugeTag::sl2);
  CHECK(dist(evaluate(S, 0.5), 4.0 * b0) < 1e-14);
}

TEST_CASE("evaluate rejects points on a pole") {
  Rng rng(3);
  const auto S = random_system(rng, 4);
  CHECK_THROWS_AS(evaluate(S, S.pole(1).value()), EvaluationAtPole);
}

TEST_CASE("contour quadrature recovers every finite residue") {
  Rng rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const auto S = random_system(rng, 4);
    for (std::size_t i = 0; i < S.size(); ++i) {
      if (S.pole(i).is_infinite()) continue;
      CHECK(dist(contour_residue(S, S.pole(i).value(), 0.1), S.residue(i)) < 1e-8);
    }
  }
}

TEST_CASE("zero-sum and trace invariants hold for constructed systems") {
  Rng rng(12);
  for (int n = 3; n <= 6; ++n) {
    const auto S = random_system(rng, n);
    Mat2 total = Mat2::Zero();
    for (const auto& b : S.residues()) {
      total += b;
      CHECK(std::abs(b.trace()) < kTolAlg);
    }
    CHECK(total.norm() < kTolAlg);
  }
}

TEST_CASE("construction rejects broken systems") {
  const Mat2 b = mat(0.2, 0.1, 0.0, -0.2);
  const SpherePoint z0(0.0), z1(1.0);
  SUBCASE("duplicate poles") {
    CHECK_THROWS_AS(FuchsianSystem::with_default_marking({z0, z0}, {b, -b}, GaugeTag::sl2), InvalidSystem);
  }
  SUBCASE("trace in sl2") {
    const Mat2 t = mat(0.3, 0.0, 0.0, 0.1);
    CHECK_THROWS_AS(FuchsianSystem::with_default_marking({z0, z1}, {t, -t}, GaugeTag::sl2), InvalidSystem);
    CHECK_NOTHROW(FuchsianSystem::with_default_marking({z0, z1}, {t, -t}, GaugeTag::gl2));
  }
  SUBCASE("residues do not sum to zero") {
    CHECK_THROWS_AS(FuchsianSystem::with_default_marking({z0, z1}, {b, b}, GaugeTag::sl2), InvalidSystem);
  }
  SUBCASE("marking must be an eigenvalue") {
    CHECK_THROWS_AS(FuchsianSystem({z0, z1}, {b, -b}, GaugeTag::sl2, {0.5, 0.2}), InvalidSystem);
  }
}

TEST_CASE("eigen_data: diagonal and symmetric residues") {
  const EigenEntry d = eigen_data(diag(3.0, -3.0), 3.0);
  CHECK(line_distance(d.plus, Vec2(1.0, 0.0)) < 1e-14);
  CHECK(line_distance(d.minus, Vec2(0.0, 1.0)) < 1e-14);

  const EigenEntry s = eigen_data(mat(0.0, 1.0, 1.0, 0.0), 1.0);
  CHECK(line_distance(s.plus, Vec2(1.0, 1.0)) < 1e-14);
  CHECK(line_distance(s.minus, Vec2(1.0, -1.0)) < 1e-14);
}

TEST_CASE("eigen_data follows the marking, not the modulus") {
  const EigenEntry e = eigen_data(diag(3.0, -3.0), -3.0);
  CHECK(e.lambda == cplx(-3.0));
  CHECK(line_distance(e.plus, Vec2(0.0, 1.0)) < 1e-14);
}

TEST_CASE("eigenlines of a conjugated residue are g times the axes") {
  Rng rng(13);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 10; ++trial) {
    const Mat2 g = mat({nd(rng), nd(rng)}, {nd(rng), nd(rng)}, {nd(rng), nd(rng)}, {nd(rng), nd(rng)});
    const cplx l = random_exponent(rng);
    const EigenEntry e = eigen_data(g * diag(l, -l) * g.inverse(), l);
    CHECK(line_distance(e.plus, g.col(0)) < 1e-10);
    CHECK(line_distance(e.minus, g.col(1)) < 1e-10);
  }
}

TEST_CASE("eigen_data rejects degenerate residues") {
  CHECK_THROWS_AS(eigen_data(mat(0.0, 1.0, 0.0, 0.0), 0.0), DegenerateResidue);
  CHECK_THROWS_AS(eigen_data(Mat2::Zero(), 0.0), DegenerateResidue);
}

TEST_CASE("eigenvalue condition") {
  CHECK(eigenvalue_condition({0.25, 0.25, 0.25}));
  CHECK_FALSE(eigenvalue_condition({0.5, 0.5, 1.0}));
  CHECK(eigenvalue_condition({cplx(0.3, 0.1), 0.2, 0.4, 0.25}));
}

TEST_CASE("eigenvalue condition matches brute force over sign vectors") {
  Rng rng(14);
  std::uniform_int_distribution<int> quarter(-4, 4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<cplx> l;
    for (int k = 0; k < 4; ++k) l.push_back(quarter(rng) / 4.0);
    bool integral = false;
    for (int mask = 0; mask < 16; ++mask) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k) s += ((mask >> k) & 1 ? 1.0 : -1.0) * l[k].real();
      integral = integral || std::abs(s - std::round(s)) < 1e-12;
    }
    CHECK(eigenvalue_condition(l) == !integral);
  }
}

TEST_CASE("constant gauge conjugates residues and keeps spectra") {
  Rng rng(15);
  const auto S = random_system(rng, 4);
  const Mat2 g = mat(1.0, 0.4, cplx(0.2, 0.3), 1.5);
  const auto T = apply_gauge(S, constant_gauge(g));
  REQUIRE(T.size() == S.size());
  for (std::size_t i = 0; i < S.size(); ++i) {
    CHECK(dist(T.residue(i), g * S.residue(i) * g.inverse()) < 1e-12);
    CHECK(dist(T.marked(i), S.marked(i)) < 1e-12);
    const EigenEntry a = eigen_data(S, i), b = eigen_data(T, i);
    CHECK(line_distance(b.plus, g * a.plus) < 1e-10);
  }
}

TEST_CASE("non-invariant sandwich diag(1, z) raises the pole order and carries epsilon") {
  const cplx l = 0.3, eps = 0.7;
  const auto S = FuchsianSystem::local({SpherePoint(0.0)}, {mat(l, eps, 0.0, -l)}, GaugeTag::sl2, {l});
  RationalMatrix g = RationalMatrix::constant(diag(1.0, 0.0));
  g.add_monomial(1, diag(0.0, 1.0));
  RationalMatrix gi = RationalMatrix::constant(diag(1.0, 0.0));
  gi.add_polar(0.0, 1, diag(0.0, 1.0));
  const RationalMatrix out = transform_connection(S.connection(), {g, gi});
  // diag(1, z) B diag(1, 1/z) + diag(0, 1/z) = [[l/z, eps/z^2], [0, (1-l)/z]]
  const cplx z(0.4, 0.3);
  CHECK(dist(out(z), mat(l / z, eps / (z * z), 0.0, (1.0 - l) / z)) < 1e-13);
  CHECK_THROWS_AS(apply_gauge(S, {g, gi}), HigherOrderPole);
}

TEST_CASE("scalar 1-form shifts traces by the coefficients") {
  Rng rng(16);
  const auto S = random_system(rng, 4);
  const auto T = add_scalar_form(S, {-0.5, 0.5, 0.0, 0.0});
  CHECK(dist(T.residue(0), S.residue(0) - 0.5 * Mat2::Identity()) < 1e-15);
  CHECK(dist(T.residue(1), S.residue(1) + 0.5 * Mat2::Identity()) < 1e-15);
  CHECK(std::abs(T.residue(0).trace() + 1.0) < 1e-14);
}
