#pragma once

#include <cmath>

#include "doctest.h"
#include "schles/sampling.hpp"

namespace schles::test {

inline double dist(const Mat2& a, const Mat2& b) { return (a - b).cwiseAbs().maxCoeff(); }
inline double dist(cplx a, cplx b) { return std::abs(a - b); }

inline Mat2 mat(cplx a, cplx b, cplx c, cplx d) {
  Mat2 m;
  m << a, b, c, d;
  return m;
}

inline Mat2 diag(cplx a, cplx b) { return mat(a, 0.0, 0.0, b); }

/// (1 / 2 pi i) times the integral of B over a circle, by the trapezoidal rule.
inline Mat2 contour_residue(const FuchsianSystem& S, cplx center, double r, int nodes = 128) {
  Mat2 acc = Mat2::Zero();
  for (int k = 0; k < nodes; ++k) {
    const cplx u = std::polar(r, 2.0 * kPi * k / nodes);
    acc += evaluate(S, center + u) * u;
  }
  return acc / static_cast<double>(nodes);
}

/// Marked eigenvalues as a vector.
inline std::vector<cplx> markings(const FuchsianSystem& S) { return S.marking(); }

}  // namespace schles::test
