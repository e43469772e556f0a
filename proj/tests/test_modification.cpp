#include "schles/modification.hpp"
#include "support.hpp"

using namespace schles;
using namespace schles::test;

namespace {

FuchsianSystem local_diag(cplx l) {
  return FuchsianSystem::local({SpherePoint(0.0)}, {diag(l, -l)}, GaugeTag::sl2, {l});
}

// Generic three-pole gl2 system with chosen spectra at the first two poles.
FuchsianSystem gl2_system(Rng& rng, cplx mu0, cplx nu0, cplx mu1, cplx nu1) {
  const Mat2 g0 = random_sl2_residue(rng, 0.5), g1 = random_sl2_residue(rng, 0.5);
  const Mat2 p0 = Mat2::Identity() + g0, p1 = Mat2::Identity() + g1;
  const Mat2 b0 = p0 * diag(mu0, nu0) * p0.inverse();
  const Mat2 b1 = p1 * diag(mu1, nu1) * p1.inverse();
  return FuchsianSystem({SpherePoint(0.0), SpherePoint(1.0), SpherePoint::infinity()}, {b0, b1, -(b0 + b1)},
                        GaugeTag::gl2, {mu0, mu1, eigenvalues(-(b0 + b1)).first});
}

}  // namespace

TEST_CASE("glueing matrix of a lower step at l- on a diagonal residue") {
  const auto S = local_diag(0.3);
  const Gauge g = glueing_matrix(S, {0, StepDirection::lower, LineSelector::minus});
  // keeps l- = (0:1), scales l+ = (1:0) by z
  const cplx z(0.7, 0.2);
  CHECK(dist(g.g(z), diag(z, 1.0)) < 1e-14);
  CHECK(std::abs(g.g(1.0).determinant() - 1.0) < 1e-14);
  CHECK(dist(g.g(z) * g.g_inv(z), Mat2::Identity()) < 1e-14);
}

TEST_CASE("lower and upper on complementary lines multiply to a power of (z - x) times identity") {
  Rng rng(21);
  const auto S = random_system(rng, 4);
  const std::size_t i = 1;
  const cplx x = S.pole(i).value();
  const Gauge lo = glueing_matrix(S, {i, StepDirection::lower, LineSelector::minus});
  const Gauge up = glueing_matrix(S, {i, StepDirection::upper, LineSelector::plus});
  const Gauge lo2 = glueing_matrix(S, {i, StepDirection::lower, LineSelector::plus});
  for (cplx z : {cplx(0.3, 0.4), cplx(-1.2, 0.5), cplx(2.0, -0.7)}) {
    CHECK(dist(lo.g(z) * up.g(z), Mat2::Identity()) < 1e-12);
    CHECK(dist(lo.g(z) * lo2.g(z), (z - x) * Mat2::Identity()) < 1e-12);
  }
}

TEST_CASE("apply_step: lower at l- raises the marked eigenvalue") {
  const cplx l = 0.3;
  const auto T = apply_step(local_diag(l), {0, StepDirection::lower, LineSelector::minus});
  CHECK(dist(T.marked(0), l + 1.0) < 1e-12);
  const auto [e1, e2] = eigenvalues(T.residue(0));
  CHECK(dist(e1, l + 1.0) < 1e-12);
  CHECK(dist(e2, -l) < 1e-12);
}

TEST_CASE("apply_step: upper at l+ lowers the marked eigenvalue") {
  const cplx l = 0.3;
  const auto T = apply_step(local_diag(l), {0, StepDirection::upper, LineSelector::plus});
  CHECK(dist(T.marked(0), l - 1.0) < 1e-12);
}

TEST_CASE("non-invariant lower step reports an order-2 pole carrying epsilon") {
  const cplx l = 0.3, eps = 0.7;
  const auto S = FuchsianSystem::local({SpherePoint(0.0)}, {mat(l, eps, 0.0, -l)}, GaugeTag::sl2, {l});
  ModificationStep step{0, StepDirection::lower, LineSelector::explicit_line};
  step.line = Vec2(1.0, 0.0);
  step.complement = Vec2(0.0, 1.0);
  CHECK_THROWS_AS(apply_step(S, step), InvalidSystem);  // opt-in required
  step.allow_non_invariant = true;
  try {
    apply_step(S, step);
    FAIL("expected HigherOrderPole");
  } catch (const HigherOrderPole& e) {
    CHECK(e.report().order == 2);
    CHECK(e.report().point.same_as(SpherePoint(0.0)));
    CHECK(dist(e.report().leading, mat(0.0, eps, 0.0, 0.0)) < 1e-12);
  }
}

TEST_CASE("lower then the literal inverse upper restores the system") {
  // Infinity must not be a pole: the global glueing matrix also acts there.
  Rng rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    const auto S = random_system(rng, 3 + trial % 3, false);
    const std::size_t i = trial % S.size();
    const EigenEntry e = eigen_data(S, i);
    const auto T = apply_step(S, {i, StepDirection::lower, LineSelector::minus});
    ModificationStep back{i, StepDirection::upper, LineSelector::explicit_line};
    back.line = e.plus;
    back.complement = e.minus;
    const auto R = apply_step(T, back);
    REQUIRE(R.size() == S.size());
    for (std::size_t k = 0; k < S.size(); ++k) CHECK(dist(R.residue(k), S.residue(k)) < 1e-12);
  }
}

TEST_CASE("pair_modify: the displayed shift and eigenvalue table") {
  Rng rng(23);
  const Mat2 b0 = random_sl2_residue(rng, 0.3), b1 = random_sl2_residue(rng, 0.1);
  const auto S = FuchsianSystem::with_default_marking(
      {SpherePoint(0.0), SpherePoint(1.0), SpherePoint::infinity()}, {b0, b1, -(b0 + b1)}, GaugeTag::sl2);
  const auto T = pair_modify(S, {0, 1});
  CHECK(dist(T.marked(0), 0.8) < 1e-12);
  CHECK(dist(T.marked(1), -0.4) < 1e-12);
  CHECK(dist(T.unmarked(0), -0.8) < 1e-12);
  CHECK(dist(T.unmarked(1), 0.4) < 1e-12);
  for (const auto& b : T.residues()) CHECK(std::abs(b.trace()) < 1e-12);
}

TEST_CASE("pair_modify then the reverse pair restores eigenvalues and residues") {
  Rng rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + trial % 3;
    const auto S = random_system(rng, n);
    const std::size_t i = trial % n, j = (i + 1 + trial % (n - 1)) % n;
    if (i == j) continue;
    const auto R = pair_modify(pair_modify(S, {i, j}), {j, i});
    for (std::size_t k = 0; k < S.size(); ++k) {
      CHECK(dist(R.marked(k), S.marked(k)) < 1e-12);
      CHECK(dist(R.residue(k), S.residue(k)) < 1e-10);
    }
  }
}

TEST_CASE("pair_modify keeps spectra elsewhere, pole count and sl2") {
  Rng rng(25);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + trial % 3;
    auto S = random_system(rng, n);
    const auto S0 = S;
    for (int step = 0; step < 3; ++step) {
      const std::size_t i = (trial + step) % n, j = (trial + 2 * step + 1) % n;
      if (i == j) continue;
      const auto T = pair_modify(S, {i, j});
      CHECK(T.size() == S.size());
      CHECK(T.gauge() == GaugeTag::sl2);
      // Roundoff in the new residues scales with their size, which the
      // gauge can inflate when l_i+ and l_j- are nearly parallel.
      for (std::size_t k = 0; k < S.size(); ++k) {
        const double scale = std::max(1.0, T.residue(k).norm());
        CHECK(std::abs(T.residue(k).trace()) < 1e-12 * scale);
        const cplx expect = S.marked(k) + (k == i ? 0.5 : k == j ? -0.5 : 0.0);
        CHECK(dist(T.marked(k), expect) < 1e-12 * scale);
      }
      S = T;
    }
  }
}

TEST_CASE("pair_modify refuses gl2 systems") {
  Rng rng(26);
  const auto S = gl2_system(rng, 0.4, 0.1, 0.3, -0.2);
  CHECK_THROWS_AS(pair_modify(S, {0, 1}), GaugeTagMismatch);
}

TEST_CASE("long_shift adds one to the marked eigenvalue") {
  Rng rng(27);
  const Mat2 b0 = random_sl2_residue(rng, 0.2), b1 = random_sl2_residue(rng, 0.35);
  const auto S = FuchsianSystem::with_default_marking(
      {SpherePoint(0.0), SpherePoint(1.0), SpherePoint::infinity()}, {b0, b1, -(b0 + b1)}, GaugeTag::sl2);
  const auto T = long_shift(S, 0);
  CHECK(dist(T.marked(0), 1.2) < 1e-12);
  CHECK(dist(T.unmarked(0), -1.2) < 1e-12);
  CHECK(dist(T.marked(1), S.marked(1)) < 1e-12);
  CHECK(T.size() == S.size());

  // marked -1/2 goes to 1/2, the pair becomes (1/2, -1/2)
  const auto H = S.with_marking({S.unmarked(0), S.marked(1), S.marked(2)});
  const Mat2 h0 = random_sl2_residue(rng, 0.5);
  const auto Q = FuchsianSystem({SpherePoint(0.0), SpherePoint(1.0), SpherePoint::infinity()},
                                {h0, b1, -(h0 + b1)}, GaugeTag::sl2,
                                {-0.5, S.marked(1), eigenvalues(-(h0 + b1)).first});
  // The intermediate step passes through lambda = 0, where the eigenvalues
  // are only determined to about sqrt(roundoff).
  const auto U = long_shift(Q, 0);
  CHECK(dist(U.marked(0), 0.5) < 1e-7);
  CHECK(dist(U.unmarked(0), -0.5) < 1e-7);
  CHECK(dist(long_shift(H, 0).marked(0), -0.2 + 1.0) < 1e-12);
}

TEST_CASE("gl2_pair_modify moves one slot by one and keeps the others") {
  Rng rng(28);
  const auto S = gl2_system(rng, 0.4, 0.1, 0.3, -0.2);
  const auto T = gl2_pair_modify(S, {0, 1}, {Slot::marked, Slot::marked, +1});
  CHECK(dist(T.marked(0), 1.4) < 1e-12);
  CHECK(dist(T.unmarked(0), 0.1) < 1e-12);
  CHECK(dist(T.marked(1), -0.7) < 1e-12);
  CHECK(dist(T.unmarked(1), -0.2) < 1e-12);
  CHECK(std::abs(T.residue(0).trace() - S.residue(0).trace() - 1.0) < 1e-12);
  CHECK(std::abs(T.residue(1).trace() - S.residue(1).trace() + 1.0) < 1e-12);

  const auto U = gl2_pair_modify(S, {0, 1}, {Slot::unmarked, Slot::marked, -1});
  CHECK(dist(U.unmarked(0), -0.9) < 1e-12);
  CHECK(dist(U.marked(1), 1.3) < 1e-12);
}

TEST_CASE("gl2 raise then the opposite move restores the system") {
  Rng rng(29);
  const auto S = gl2_system(rng, 0.4, 0.1, 0.3, -0.2);
  const auto T = gl2_pair_modify(S, {0, 1}, {Slot::marked, Slot::marked, +1});
  const auto R = gl2_pair_modify(T, {0, 1}, {Slot::marked, Slot::marked, -1});
  for (std::size_t k = 0; k < S.size(); ++k) CHECK(dist(R.residue(k), S.residue(k)) < 1e-12);
}
