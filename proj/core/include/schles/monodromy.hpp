#pragma once

#include <optional>
#include <vector>

#include "schles/fuchsian.hpp"
#include "schles/integrator.hpp"

namespace schles {

/// A straight segment a -> b, or an arc of the circle |z - center| = radius
/// from angle theta0 to theta1 (counterclockwise when theta1 > theta0).
struct PathPiece {
  enum class Kind { segment, arc } kind = Kind::segment;
  cplx a, b;
  cplx center;
  double radius = 0.0;
  double theta0 = 0.0, theta1 = 0.0;

  static PathPiece segment(cplx from, cplx to);
  static PathPiece arc(cplx center, double radius, double theta0, double theta1);

  cplx point(double s) const;     // s in [0, 1]
  cplx velocity(double s) const;  // dz/ds
  cplx start() const { return point(0.0); }
  cplx end() const { return point(1.0); }
  double distance_to(cplx p) const;
};

using Path = std::vector<PathPiece>;

struct PathOptions {
  double tol = 1e-12;       // local error tolerance (absolute and relative)
  double margin = 1e-6;     // minimal allowed distance from a finite pole
  double det_check = 1e-8;  // relative tolerance of the determinant check
};

struct TransportResult {
  Mat2 y;
  double det_error = 0.0;  // |det Y - det Y0 exp(int tr B)| / |Y|^2
  std::size_t steps = 0;
};

/// Solves dY = B(z) Y dz along a path.
TransportResult integrate_along(const FuchsianSystem& system, const Path& path, const Mat2& y0,
                                const PathOptions& opts = {});

/// Keyhole loops from a common base point, one per pole. The loop around a
/// finite pole runs straight to its circle, once around counterclockwise and
/// straight back. The loop around infinity is a large circle traversed
/// clockwise (counterclockwise in the chart w = 1/z).
struct LoopPlan {
  cplx base;
  std::vector<std::size_t> order;  // pole indices, one loop each
  std::vector<double> radii;       // circle radius per pole (infinity: big radius)
  cplx center;                     // center of the big circle
};

/// Default plan: base point below all finite poles, radius one third of the
/// distance to the nearest other pole. A chosen base point overrides the
/// default.
LoopPlan make_plan(const FuchsianSystem& system, std::optional<cplx> base = std::nullopt);

/// Throws PathTooClose when the plan does not keep clear of the poles.
void validate_plan(const FuchsianSystem& system, const LoopPlan& plan);

Path loop_path(const FuchsianSystem& system, const LoopPlan& plan, std::size_t k);

struct MonodromyRep {
  std::vector<Mat2> m;             // one per entry of the plan order
  std::vector<std::size_t> poles;  // pole index of each matrix
  cplx base;
  double tol = 0.0;
  double max_det_error = 0.0;
};

MonodromyRep monodromy(const FuchsianSystem& system, const LoopPlan& plan,
                       const PathOptions& opts = {});

/// Loops composed right to left in the order in which a large counterclockwise
/// circle meets them, times the loop at infinity. Returns the distance of
/// that product to +I and to -I (the smaller is the relevant one).
struct ProductCheck {
  double to_plus = 0.0;
  double to_minus = 0.0;
  // prod_k max(1, |M_k|): the size of roundoff in the product
  double scale = 1.0;
  std::vector<std::size_t> order;  // indices into rep.m, rightmost first
};
ProductCheck loop_product(const FuchsianSystem& system, const MonodromyRep& rep);

/// max_k |tr M_k - (e^{2 pi i mu_k} + e^{2 pi i nu_k})| over the poles whose
/// exponent difference is not an integer.
double local_exponent_residual(const FuchsianSystem& system, const MonodromyRep& rep);

struct ProjectiveMatch {
  Mat2 conjugator;
  std::vector<int> signs;
  double residual = 0.0;
};

/// Finds C and signs s_k with M'_k = s_k C M_k C^-1. Sign patterns tried: all
/// plus, and every pattern supported on `designated` (positions in rep order).
ProjectiveMatch compare_projective(const MonodromyRep& rep1, const MonodromyRep& rep2,
                                   const std::vector<std::size_t>& designated = {});

/// Largest all-plus projective residual between consecutive snapshots.
double isomonodromy_drift(const std::vector<std::pair<FuchsianSystem, LoopPlan>>& snapshots,
                          const PathOptions& opts = {});

}  // namespace schles
