#pragma once

#include <array>
#include <vector>

#include "schles/types.hpp"

namespace schles {

/// A function value with its first two derivatives.
struct SeriesValue {
  cplx f, df, d2f;
  std::size_t terms = 0;
};

/// The two local exponents at one singular point.
struct ExponentPair {
  cplx sigma, tau;
};

/// Points with exponent pairs and no constraint. Used for intermediate tables
/// (for instance the eigenvalue form of a scheme, which is not Fuchsian).
struct ExponentTable {
  std::vector<SpherePoint> points;
  std::vector<ExponentPair> exps;

  cplx exponent_sum() const;
};

/// Three-point scheme. The constructor enforces the Fuchs relation
/// sum (sigma_i + tau_i) = 1.
class RiemannScheme3 {
 public:
  RiemannScheme3(std::array<SpherePoint, 3> poles, std::array<ExponentPair, 3> exps,
                 double tol = kTolAlg);

  const std::array<SpherePoint, 3>& poles() const { return poles_; }
  const std::array<ExponentPair, 3>& exps() const { return exps_; }
  ExponentTable table() const;

 private:
  std::array<SpherePoint, 3> poles_;
  std::array<ExponentPair, 3> exps_;
};

/// Four points 0, 1, a, infinity with exponents and an accessory parameter.
/// Exponent sum must be 2.
class RiemannScheme4 {
 public:
  RiemannScheme4(cplx a, std::array<ExponentPair, 4> exps, cplx q, double tol = kTolAlg);

  cplx a() const { return a_; }
  cplx q() const { return q_; }
  const std::array<ExponentPair, 4>& exps() const { return exps_; }  // at 0, 1, a, inf
  ExponentTable table() const;

 private:
  cplx a_;
  std::array<ExponentPair, 4> exps_;
  cplx q_;
};

/// y'' + p(z) y' + q(z) y = 0 with
///   p = sum A_i / (z - x_i),
///   q = sum B_i / (z - x_i)^2 + C_i / (z - x_i),
/// all x_i finite. Infinity is a regular singular point when sum C_i = 0.
struct Ode2 {
  std::vector<cplx> points;
  std::vector<cplx> p_res;     // A_i
  std::vector<cplx> q_double;  // B_i
  std::vector<cplx> q_simple;  // C_i

  cplx p(cplx z) const;
  cplx q(cplx z) const;
  cplx dp(cplx z) const;
  cplx dq(cplx z) const;
  /// |y'' + p y' + q y| / (|y''| + |p y'| + |q y|), 0 when all vanish.
  double residual(cplx z, cplx y, cplx dy, cplx d2y) const;
};

/// The Papperitz equation of a three-point scheme. A pole at infinity is
/// handled by the limiting form of the formula.
Ode2 scheme_to_ode3(const RiemannScheme3& s);

/// Heun's equation y'' + (g/z + d/(z-1) + e/(z-a)) y' + ab (z - q) / (z(z-1)(z-a)) y = 0
/// with e = ab_sum + 1 - g - d; `alpha_beta` is the product ab.
Ode2 heun_ode(cplx a, cplx q, cplx alpha_beta, cplx gamma, cplx delta, cplx epsilon);

/// Roots of the indicial equation at a finite point of the ODE.
ExponentPair indicial_roots(const Ode2& ode, std::size_t i);
/// Roots at infinity, exponents in the local parameter 1/z.
ExponentPair indicial_roots_at_infinity(const Ode2& ode);

/// Writes the table as prod_{finite} (z - x_i)^{sigma_i} times a table whose
/// first row vanishes at the finite points; the infinite point absorbs the
/// sum of the sigma's. Requires infinity to be one of the points.
struct NormalizedScheme {
  std::vector<cplx> prefactor;  // sigma_i at each point (0 at infinity)
  ExponentTable scheme;
};
NormalizedScheme normalize_scheme(const ExponentTable& t);
RiemannScheme3 normalize_scheme(const RiemannScheme3& s, std::vector<cplx>* prefactor = nullptr);

/// Eigenvalue form {lambda_0, lambda_1, lambda_inf; -lambda_0, -lambda_1, -lambda_inf}.
ExponentTable lambda_table(cplx l0, cplx l1, cplx linf);

}  // namespace schles
