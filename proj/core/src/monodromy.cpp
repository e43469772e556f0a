#include "schles/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace schles {

PathPiece PathPiece::segment(cplx from, cplx to) {
  PathPiece p;
  p.kind = Kind::segment;
  p.a = from;
  p.b = to;
  return p;
}

PathPiece PathPiece::arc(cplx center, double radius, double theta0, double theta1) {
  PathPiece p;
  p.kind = Kind::arc;
  p.center = center;
  p.radius = radius;
  p.theta0 = theta0;
  p.theta1 = theta1;
  return p;
}

cplx PathPiece::point(double s) const {
  if (kind == Kind::segment) return a + s * (b - a);
  return center + radius * std::exp(kI * (theta0 + s * (theta1 - theta0)));
}

cplx PathPiece::velocity(double s) const {
  if (kind == Kind::segment) return b - a;
  const double th = theta0 + s * (theta1 - theta0);
  return kI * (theta1 - theta0) * radius * std::exp(kI * th);
}

double PathPiece::distance_to(cplx p) const {
  if (kind == Kind::segment) {
    const cplx d = b - a;
    const double len2 = std::norm(d);
    double s = len2 == 0.0 ? 0.0 : std::real(std::conj(d) * (p - a)) / len2;
    s = std::clamp(s, 0.0, 1.0);
    return std::abs(p - (a + s * d));
  }
  // Full-turn arcs are the only ones used for loops; treat partial arcs by sampling.
  if (std::abs(theta1 - theta0) >= 2 * kPi - 1e-12) return std::abs(std::abs(p - center) - radius);
  double best = std::abs(p - point(0.0));
  for (int k = 1; k <= 256; ++k) best = std::min(best, std::abs(p - point(k / 256.0)));
  return best;
}

TransportResult integrate_along(const FuchsianSystem& system, const Path& path, const Mat2& y0,
                                const PathOptions& opts) {
  for (const auto& piece : path)
    for (std::size_t i = 0; i < system.size(); ++i)
      if (system.pole(i).is_finite() && piece.distance_to(system.pole(i).value()) < opts.margin)
        throw PathTooClose("path passes within " + std::to_string(opts.margin) + " of pole " +
                           std::to_string(i));

  TransportResult res;
  // State: the four entries of Y (column major) and int tr B dz.
  State y{y0(0, 0), y0(1, 0), y0(0, 1), y0(1, 1), 0.0};
  IntegrateOptions io;
  io.abs_tol = opts.tol;
  io.rel_tol = opts.tol;
  io.blowup = 1e200;
  for (const auto& piece : path) {
    const Rhs f = [&](const State& s, State& ds, double t) {
      const cplx z = piece.point(t);
      const Mat2 b = evaluate(system, z) * piece.velocity(t);
      ds.resize(5);
      ds[0] = b(0, 0) * s[0] + b(0, 1) * s[1];
      ds[1] = b(1, 0) * s[0] + b(1, 1) * s[1];
      ds[2] = b(0, 0) * s[2] + b(0, 1) * s[3];
      ds[3] = b(1, 0) * s[2] + b(1, 1) * s[3];
      ds[4] = b.trace();
    };
    const auto r = integrate(f, y, 0.0, 1.0, io);
    y = r.y;
    res.steps += r.steps;
  }
  res.y << y[0], y[2], y[1], y[3];
  const cplx det = res.y.determinant();
  const cplx expected = y0.determinant() * std::exp(y[4]);
  // scaled by |Y|^2, the natural size of roundoff in a 2x2 determinant
  res.det_error = std::abs(det - expected) / std::max(res.y.squaredNorm(), 1e-300);
  if (res.det_error > opts.det_check)
  {
    char buf[96];
    std::snprintf(buf, sizeof buf, "determinant check failed (relative error %.3g)", res.det_error);
    throw StepUnderflow(buf);
  }
  return res;
}

namespace {

std::vector<cplx> finite_poles(const FuchsianSystem& s) {
  std::vector<cplx> f;
  for (const auto& p : s.poles())
    if (p.is_finite()) f.push_back(p.value());
  return f;
}

double default_radius(const FuchsianSystem& s, std::size_t k) {
  const cplx x = s.pole(k).value();
  double d = 1e300;
  for (std::size_t j = 0; j < s.size(); ++j)
    if (j != k && s.pole(j).is_finite()) d = std::min(d, std::abs(s.pole(j).value() - x));
  return d == 1e300 ? 0.5 : d / 3.0;
}

LoopPlan plan_with_base(const FuchsianSystem& s, cplx base, cplx center, double spread) {
  LoopPlan plan;
  plan.base = base;
  plan.center = center;
  plan.order.resize(s.size());
  std::iota(plan.order.begin(), plan.order.end(), 0);
  for (std::size_t k = 0; k < s.size(); ++k)
    plan.radii.push_back(s.pole(k).is_finite() ? default_radius(s, k)
                                               : 1.5 * std::max(std::abs(base - center), spread));
  return plan;
}

}  // namespace

Path loop_path(const FuchsianSystem& system, const LoopPlan& plan, std::size_t k) {
  const std::size_t pole = plan.order.at(k);
  const double r = plan.radii.at(k);
  if (system.pole(pole).is_infinite()) {
    const cplx dir = (plan.base - plan.center) / std::abs(plan.base - plan.center);
    const cplx start = plan.center + r * dir;
    const double th = std::arg(dir);
    return {PathPiece::segment(plan.base, start), PathPiece::arc(plan.center, r, th, th - 2 * kPi),
            PathPiece::segment(start, plan.base)};
  }
  const cplx x = system.pole(pole).value();
  const cplx dir = (plan.base - x) / std::abs(plan.base - x);
  const cplx start = x + r * dir;
  const double th = std::arg(dir);
  return {PathPiece::segment(plan.base, start), PathPiece::arc(x, r, th, th + 2 * kPi),
          PathPiece::segment(start, plan.base)};
}

void validate_plan(const FuchsianSystem& system, const LoopPlan& plan) {
  if (plan.order.size() != plan.radii.size()) throw PathTooClose("plan radii/order mismatch");
  for (std::size_t i = 0; i < system.size(); ++i)
    if (system.pole(i).is_finite() && std::abs(system.pole(i).value() - plan.base) < kPoleSeparation)
      throw PathTooClose("base point sits on a pole");
  for (std::size_t k = 0; k < plan.order.size(); ++k) {
    const Path path = loop_path(system, plan, k);
    for (std::size_t j = 0; j < system.size(); ++j) {
      if (j == plan.order[k] || system.pole(j).is_infinite()) continue;
      const auto it = std::find(plan.order.begin(), plan.order.end(), j);
      const double rj = it == plan.order.end() ? default_radius(system, j)
                                               : plan.radii[it - plan.order.begin()];
      for (const auto& piece : path)
        if (piece.distance_to(system.pole(j).value()) < rj)
          throw PathTooClose("loop " + std::to_string(k) + " passes too close to pole " +
                             std::to_string(j));
    }
    if (system.pole(plan.order[k]).is_finite() &&
        std::abs(plan.base - system.pole(plan.order[k]).value()) <= plan.radii[k])
      throw PathTooClose("base point lies inside loop circle " + std::to_string(k));
  }
}

LoopPlan make_plan(const FuchsianSystem& system, std::optional<cplx> base) {
  const auto f = finite_poles(system);
  cplx center = 0.0;
  for (cplx x : f) center += x;
  if (!f.empty()) center /= static_cast<double>(f.size());
  double spread = 0.0;
  for (cplx x : f) spread = std::max(spread, std::abs(x - center));
  if (base) {
    LoopPlan plan = plan_with_base(system, *base, center, spread);
    validate_plan(system, plan);
    return plan;
  }
  const double dist = 1.25 * spread + 1.0;
  for (int attempt = 0; attempt < 24; ++attempt) {
    // below the poles first, then rotate away from the vertical
    const double phi = -kPi / 2 + (attempt % 2 ? 1 : -1) * 0.13 * ((attempt + 1) / 2);
    const cplx b = center + dist * std::exp(kI * phi);
    LoopPlan plan = plan_with_base(system, b, center, spread);
    try {
      validate_plan(system, plan);
      return plan;
    } catch (const PathTooClose&) {
    }
  }
  throw PathTooClose("no admissible base point found");
}

MonodromyRep monodromy(const FuchsianSystem& system, const LoopPlan& plan, const PathOptions& opts) {
  validate_plan(system, plan);
  MonodromyRep rep;
  rep.base = plan.base;
  rep.tol = opts.tol;
  rep.poles = plan.order;
  for (std::size_t k = 0; k < plan.order.size(); ++k) {
    const auto r = integrate_along(system, loop_path(system, plan, k), Mat2::Identity(), opts);
    rep.m.push_back(r.y);
    rep.max_det_error = std::max(rep.max_det_error, r.det_error);
  }
  return rep;
}

ProductCheck loop_product(const FuchsianSystem& system, const MonodromyRep& rep) {
  // Finite loops sorted by the direction in which they leave the base point,
  // measured counterclockwise from the direction pointing away from the poles.
  std::vector<std::size_t> finite, infinite;
  for (std::size_t k = 0; k < rep.poles.size(); ++k)
    (system.pole(rep.poles[k]).is_finite() ? finite : infinite).push_back(k);
  cplx center = 0.0;
  for (std::size_t k : finite) center += system.pole(rep.poles[k]).value();
  if (!finite.empty()) center /= static_cast<double>(finite.size());
  const cplx away = rep.base - center;
  auto angle = [&](std::size_t k) {
    double a = std::arg((system.pole(rep.poles[k]).value() - rep.base) / away);
    return a < 0 ? a + 2 * kPi : a;
  };
  std::sort(finite.begin(), finite.end(),
            [&](std::size_t a, std::size_t b) { return angle(a) < angle(b); });

  ProductCheck pc;
  Mat2 prod = Mat2::Identity();
  for (std::size_t k : finite) {
    prod = rep.m[k] * prod;
    pc.order.push_back(k);
    pc.scale *= std::max(1.0, norm(rep.m[k]));
  }
  for (std::size_t k : infinite) {
    pc.scale *= std::max(1.0, norm(rep.m[k]));
    prod = rep.m[k] * prod;
    pc.order.push_back(k);
  }
  pc.to_plus = norm(prod - Mat2::Identity());
  pc.to_minus = norm(prod + Mat2::Identity());
  return pc;
}

double local_exponent_residual(const FuchsianSystem& system, const MonodromyRep& rep) {
  double worst = 0.0;
  for (std::size_t k = 0; k < rep.poles.size(); ++k) {
    const std::size_t i = rep.poles[k];
    const cplx mu = system.marked(i), nu = system.unmarked(i);
    const cplx diff = mu - nu;
    if (std::abs(diff.imag()) < 1e-9 && std::abs(diff.real() - std::round(diff.real())) < 1e-9)
      continue;  // resonant: the trace test degenerates
    // At infinity the loop is clockwise in z, i.e. positive in the chart w = 1/z,
    // and the residue there is the one stored for infinity.
    const cplx expected = std::exp(2.0 * kPi * kI * mu) + std::exp(2.0 * kPi * kI * nu);
    worst = std::max(worst, std::abs(rep.m[k].trace() - expected));
  }
  return worst;
}

namespace {

struct SignFit {
  Mat2 c;
  double residual;
  double null_gap;  // second smallest / largest singular value
};

SignFit fit_conjugator(const MonodromyRep& a, const MonodromyRep& b, const std::vector<int>& s) {
  const std::size_t n = a.m.size();
  Eigen::MatrixXcd sys(4 * n, 4);
  const Mat2 id = Mat2::Identity();
  for (std::size_t k = 0; k < n; ++k) {
    // vec(C M) = (M^T kron I) vec C, vec(M' C) = (I kron M') vec C
    Eigen::Matrix4cd block;
    const Mat2 mt = a.m[k].transpose();
    const Mat2 mp = b.m[k] * static_cast<double>(s[k]);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        block.block<2, 2>(2 * r, 2 * c) = mt(r, c) * id;
        block.block<2, 2>(2 * r, 2 * c) -= id(r, c) * mp;
      }
    sys.block<4, 4>(4 * k, 0) = block;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sys, Eigen::ComputeFullV);
  const auto sv = svd.singularValues();
  const Eigen::Vector4cd v = svd.matrixV().col(3);
  Mat2 c;
  c << v(0), v(2), v(1), v(3);
  SignFit fit;
  fit.c = c;
  fit.null_gap = sv(2) / std::max(sv(0), 1e-300);
  const double det = std::abs(c.determinant());
  if (det < 1e-12 * c.squaredNorm()) {
    fit.residual = 1e300;
    return fit;
  }
  const Mat2 ci = c.inverse();
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Mat2 diff = c * a.m[k] * ci - static_cast<double>(s[k]) * b.m[k];
    worst = std::max(worst, norm(diff) / std::max(1.0, norm(b.m[k])));
  }
  fit.residual = worst;
  return fit;
}

}  // namespace

ProjectiveMatch compare_projective(const MonodromyRep& rep1, const MonodromyRep& rep2,
                                   const std::vector<std::size_t>& designated) {
  if (rep1.m.size() != rep2.m.size())
    throw InvalidSystem("representations have different numbers of loops");
  const std::size_t n = rep1.m.size();
  for (std::size_t d : designated)
    if (d >= n) throw InvalidSystem("designated loop out of range");

  // Irreducibility of each side: the centralizer must be the scalars.
  for (const MonodromyRep* r : {&rep1, &rep2})
    if (fit_conjugator(*r, *r, std::vector<int>(n, 1)).null_gap < 1e-8)
      throw ReducibleRepresentation("monodromy has a nontrivial centralizer");

  ProjectiveMatch best;
  best.residual = 1e300;
  const std::size_t patterns = std::size_t{1} << designated.size();
  for (std::size_t mask = 0; mask < patterns; ++mask) {
    std::vector<int> s(n, 1);
    for (std::size_t b = 0; b < designated.size(); ++b)
      if (mask >> b & 1) s[designated[b]] = -1;
    const SignFit fit = fit_conjugator(rep1, rep2, s);
    if (fit.residual < best.residual) {
      best.residual = fit.residual;
      best.signs = s;
      best.conjugator = fit.c / std::sqrt(fit.c.determinant());
    }
  }
  return best;
}

double isomonodromy_drift(const std::vector<std::pair<FuchsianSystem, LoopPlan>>& snapshots,
                          const PathOptions& opts) {
  double worst = 0.0;
  std::optional<MonodromyRep> prev;
  for (const auto& [system, plan] : snapshots) {
    MonodromyRep rep = monodromy(system, plan, opts);
    if (prev) worst = std::max(worst, compare_projective(*prev, rep).residual);
    prev = std::move(rep);
  }
  return worst;
}

}  // namespace schles
