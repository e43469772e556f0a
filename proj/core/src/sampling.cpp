#include "schles/sampling.hpp"

#include <cmath>

namespace schles {

namespace {

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

cplx small(Rng& rng, double r) { return {uniform(rng, -r, r), uniform(rng, -r, r)}; }

double integer_distance(cplx x) {
  return std::hypot(x.real() - std::round(x.real()), x.imag());
}

}  // namespace

Mat2 random_sl2_residue(Rng& rng, cplx lambda) {
  Mat2 g;
  g << 1.0 + small(rng, 0.3), small(rng, 0.5), small(rng, 0.5), 1.0 + small(rng, 0.3);
  Mat2 d;
  d << lambda, 0.0, 0.0, -lambda;
  return g * d * g.inverse();
}

cplx random_exponent(Rng& rng) { return uniform(rng, 0.05, 0.45); }

FuchsianSystem random_system(Rng& rng, int n, bool infinity) {
  if (n < 3) throw InvalidSystem("random_system needs n >= 3");
  std::vector<cplx> finite = {0.0, 1.0};
  const int finite_count = infinity ? n - 1 : n;
  while (static_cast<int>(finite.size()) < finite_count) {
    const cplx z(uniform(rng, -1.0, 2.0), uniform(rng, -1.0, 1.0));
    bool ok = true;
    for (cplx w : finite) ok = ok && std::abs(z - w) >= 0.4;
    if (ok) finite.push_back(z);
  }
  std::vector<SpherePoint> poles;
  std::vector<Mat2> residues;
  Mat2 total = Mat2::Zero();
  for (cplx z : finite) {
    poles.emplace_back(z);
    residues.push_back(random_sl2_residue(rng, random_exponent(rng)));
    total += residues.back();
  }
  if (infinity) {
    poles.push_back(SpherePoint::infinity());
    residues.push_back(-total);
  } else {
    residues.back() -= total;
  }
  return FuchsianSystem::with_default_marking(poles, residues, GaugeTag::sl2);
}

HypergeomParams random_gauss_params(Rng& rng) {
  for (;;) {
    HypergeomParams p{{uniform(rng, -1.5, 1.5), uniform(rng, -0.5, 0.5)},
                      {uniform(rng, -1.5, 1.5), uniform(rng, -0.5, 0.5)},
                      {uniform(rng, 0.3, 2.3), uniform(rng, -0.5, 0.5)}};
    const bool generic = integer_distance(1.0 - p.c) > 0.05 && integer_distance(p.c - p.a - p.b) > 0.05 &&
                         integer_distance(p.a - p.b) > 0.05 && std::abs(p.a) > 0.1 &&
                         std::abs(p.a + 1.0 - p.c) > 0.1;
    if (generic) return p;
  }
}

HeunParams random_heun_params(Rng& rng, cplx a) {
  HeunParams p;
  p.a = a;
  p.q = small(rng, 1.0);
  p.alpha = {uniform(rng, -1.0, 1.5), uniform(rng, -0.4, 0.4)};
  p.beta = {uniform(rng, -1.0, 1.5), uniform(rng, -0.4, 0.4)};
  p.gamma = {uniform(rng, 0.3, 2.0), uniform(rng, -0.4, 0.4)};
  p.delta = {uniform(rng, 0.3, 2.0), uniform(rng, -0.4, 0.4)};
  return p;
}

}  // namespace schles
