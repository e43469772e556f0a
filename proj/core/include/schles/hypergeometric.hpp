#pragma once

#include <vector>

#include "schles/expression.hpp"
#include "schles/riemann.hpp"

namespace schles {

struct HypergeomParams {
  cplx a, b, c;
};

/// Taylor coefficients (a)_n (b)_n / ((c)_n n!) for n < count.
std::vector<cplx> gauss_coefficients(const HypergeomParams& p, std::size_t count);

/// F(a, b; c | z) with F' and F'', summed until the tail bound drops below
/// tol (relative to max(1, |F|)). Requires |z| < 1 - margin and tol >= 1e-14.
SeriesValue gauss_2f1_series(const HypergeomParams& p, cplx z, double tol = 1e-14,
                             double margin = 0.2);
cplx gauss_2f1(const HypergeomParams& p, cplx z, double tol = 1e-14, double margin = 0.2);

/// z(1-z) y'' + (c - (a+b+1) z) y' - ab y = 0 divided by z(1-z).
Ode2 hypergeometric_ode(const HypergeomParams& p);

/// Exponents {0, 1-c} at 0, {0, c-a-b} at 1, {a, b} at infinity.
RiemannScheme3 hypergeometric_scheme(const HypergeomParams& p);

/// Residuals of the two rows of the contiguous relation
///   F(a+1, b, c) = F + (z/a) F'
///   F2(a'+1) = (a/a') F2 + (z/a') F2',  F2(a') = z^{1-c} F(a', b+1-c, 2-c), a' = a+1-c,
/// each relative to max(1, |left side|).
struct GaussRelationReport {
  double row1 = 0.0;
  double row2 = 0.0;
  double max() const { return row1 > row2 ? row1 : row2; }
};
GaussRelationReport verify_gauss_relation(const HypergeomParams& p, cplx z);

/// Kummer's 24 solutions. Throws ResonantParameters when an exponent
/// difference is an integer (the list then contains coincident entries).
std::vector<SolutionExpression> kummer_solutions(const HypergeomParams& p);

}  // namespace schles
