#pragma once

#include <vector>

#include "schles/expression.hpp"
#include "schles/riemann.hpp"

namespace schles {

/// Heun's equation
///   y'' + (gamma/z + delta/(z-1) + epsilon/(z-a)) y'
///       + alpha beta (z - q) / (z (z-1) (z-a)) y = 0,
/// epsilon = alpha + beta + 1 - gamma - delta. The accessory parameter enters
/// through alpha beta q (the usual Heun normalization writes that product as q).
struct HeunParams {
  cplx a, q, alpha, beta, gamma, delta;

  cplx epsilon() const { return alpha + beta + 1.0 - gamma - delta; }
  cplx q_std() const { return alpha * beta * q; }
  RiemannScheme4 scheme() const;
  Ode2 ode() const;
};

/// Taylor coefficients of the local solution at 0 normalized by c_0 = 1:
///   a gamma c_1 = q_std c_0,
///   a (j+1)(j+gamma) c_{j+1} = [q_std + j((j-1+gamma)(1+a) + a delta + epsilon)] c_j
///                              - (j-1+alpha)(j-1+beta) c_{j-1}.
std::vector<cplx> heun_coefficients(const HeunParams& p, std::size_t count);

/// The first `terms` terms of the series and their derivatives.
SeriesValue heun_partial_sum(const HeunParams& p, cplx z, std::size_t terms);

/// Local solution at 0, summed until a geometric tail estimate drops below
/// tol. Requires |z| < min(1, |a|) - margin.
SeriesValue heun_series(const HeunParams& p, cplx z, double tol = 1e-14, double margin = 0.1);

/// The eight local solutions at 0, 1, a, infinity (two exponents each).
/// Labels: y^hol_0, y^{1-gamma}_0, y^hol_1, y^{1-delta}_1, y^hol_a,
/// y^{1-epsilon}_a, y^alpha_inf, y^beta_inf.
struct LabeledExpression {
  std::string label;
  SolutionExpression expr;
};
std::vector<LabeledExpression> heun_local_solutions(const HeunParams& p);

/// All 24 x 8 = 192 expressions. Throws ResonantParameters on coincidences.
std::vector<SolutionExpression> heun_expressions(const HeunParams& p);

/// The contiguous relation
///   [(eps-1) - (ab/gamma) q] F(a, q' | alpha, beta, gamma+1, delta+1)
///     = (eps-1) F + (z-a) F',   q' = q + a(gamma+delta)/(ab) - gamma/(ab),
/// checked as printed, and independently: the right side g is fitted to a
/// Heun operator with gamma+1, delta+1 and free (epsilon', alpha'beta', q^)
/// from its Taylor coefficients.
struct HeunRelationReport {
  double residual_as_stated = 0.0;  // relative, at z
  cplx q_printed;                     // q'
  cplx q_fit;                       // q^
  cplx epsilon_fit;                 // fitted epsilon'
  cplx alpha_beta_fit;              // fitted alpha' beta'
  double fit_residual = 0.0;        // Heun ODE residual of g at z under the fit
  double taylor_misfit = 0.0;       // least-squares misfit over the Taylor orders
  // Exponent sum of g at 0, 1, a, inf: a Heun operator needs 2.
  cplx exponent_sum;
};
HeunRelationReport verify_heun_relation(const HeunParams& p, cplx z);

/// Second row of the pair relation at 0 (the z^{1-gamma} branch), as printed.
/// Returns the residual relative to max(1, |left side|). Throws
/// ResonantParameters for integer gamma.
double verify_heun_second_row(const HeunParams& p, cplx z);

}  // namespace schles
