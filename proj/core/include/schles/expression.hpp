#pragma once

#include <array>
#include <string>
#include <vector>

#include "schles/moebius.hpp"
#include "schles/riemann.hpp"

namespace schles {

/// Integer affine form c0 v0 + c1 v1 + c2 v2 + c3 v3 + c4 in four parameters.
/// Exponent shifts under Kummer/Heun transformations stay in this class, so
/// comparisons are exact.
struct Affine {
  std::array<long, 5> c{};

  static Affine var(int k) {
    Affine a;
    a.c[k] = 1;
    return a;
  }
  static Affine constant(long x) {
    Affine a;
    a.c[4] = x;
    return a;
  }
  cplx eval(const std::array<cplx, 4>& v) const;
  std::string str(const std::array<std::string, 4>& names) const;

  friend Affine operator+(Affine a, const Affine& b) {
    for (int k = 0; k < 5; ++k) a.c[k] += b.c[k];
    return a;
  }
  friend Affine operator-(Affine a, const Affine& b) {
    for (int k = 0; k < 5; ++k) a.c[k] -= b.c[k];
    return a;
  }
  friend Affine operator-(Affine a) {
    for (auto& x : a.c) x = -x;
    return a;
  }
  friend bool operator==(const Affine&, const Affine&) = default;
  friend auto operator<=>(const Affine&, const Affine&) = default;
};

enum class FunctionKind { hypergeometric, heun };

/// y(z) = z^{e0} (z-1)^{e1} (z-a)^{ea} F(params | w), w = map(z), with F the
/// Gauss function (params a, b, c) or the local Heun function at 0 (params
/// alpha, beta, gamma, delta; modulus a' and accessory q').
struct SolutionExpression {
  FunctionKind kind = FunctionKind::hypergeometric;
  Moebius map;
  std::string map_text;
  // z-points sent to w = 0, 1, infinity (and a' for Heun)
  SpherePoint to0, to1, toinf, toa;
  std::array<Affine, 3> prefactor;  // exponents of z, z - 1, z - a
  std::array<Affine, 4> params;     // unused trailing slot for the Gauss function

  // Numeric data the forms are evaluated at.
  std::array<cplx, 4> base{};
  cplx a = 0.0;          // fourth point of the original equation (Heun)
  cplx modulus = 0.0;    // a' = map(a-point)
  cplx accessory = 0.0;  // q', from the transformed equation

  std::array<cplx, 3> prefactor_values() const;
  std::array<cplx, 4> param_values() const;
  /// Radius of the disk in w where the series is used.
  double disk_radius() const;
  std::string str() const;
};

/// y, y', y'' at z; derivatives by term-wise differentiated series.
SeriesValue evaluate(const SolutionExpression& e, cplx z, double tol = 1e-14);

/// A point in the expression's disk: z = map^{-1}(w0) with |w0| a fixed
/// fraction of the disk radius.
cplx sample_point(const SolutionExpression& e);

/// Builds every expression for the given exponent table (points 0, 1, [a,] inf
/// in that order). For each assignment of three of the points to w = 0, 1, inf
/// and each choice of one exponent at w = 0, 1 (and a'), one expression.
std::vector<SolutionExpression> build_expressions(FunctionKind kind,
                                                  const std::vector<std::array<Affine, 2>>& exps,
                                                  const std::array<cplx, 4>& base, cplx a = 0.0,
                                                  cplx q = 0.0);

/// Number of pairwise different entries; two entries coincide when they use
/// the same point assignment, prefactor and parameters (a and b unordered).
std::size_t count_distinct(const std::vector<SolutionExpression>& list);

}  // namespace schles
