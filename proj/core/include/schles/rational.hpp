#pragma once

#include <vector>

#include "schles/types.hpp"

namespace schles {

/// Truncated Laurent series sum_{k=low}^{low+c.size()-1} c[k-low] h^k.
struct Laurent {
  int low = 0;
  std::vector<Mat2> c;

  int high() const { return low + static_cast<int>(c.size()) - 1; }
  Mat2 at(int k) const;
};

Laurent multiply(const Laurent& a, const Laurent& b, int max_order);
Laurent add(const Laurent& a, const Laurent& b);

/// Principal part at a finite point: coeffs[k] multiplies (z - point)^-(k+1).
struct PolarPart {
  cplx point;
  std::vector<Mat2> coeffs;

  int order() const { return static_cast<int>(coeffs.size()); }
};

/// A 2x2 rational matrix function written as polynomial + principal parts.
class RationalMatrix {
 public:
  RationalMatrix() = default;

  static RationalMatrix constant(const Mat2& m);
  static RationalMatrix identity() { return constant(Mat2::Identity()); }

  /// Adds c (z - p)^-order; order >= 1.
  RationalMatrix& add_polar(cplx p, int order, const Mat2& c);
  /// Adds c z^degree; degree >= 0.
  RationalMatrix& add_monomial(int degree, const Mat2& c);

  const std::vector<Mat2>& polynomial() const { return poly_; }
  const std::vector<PolarPart>& parts() const { return parts_; }

  Mat2 operator()(cplx z) const;
  RationalMatrix derivative() const;
  RationalMatrix operator+(const RationalMatrix& other) const;
  RationalMatrix scaled(cplx s) const;

  /// Laurent expansion in h = z - p up to and including h^max_order.
  Laurent laurent_at(cplx p, int max_order) const;
  /// Laurent expansion in u = 1/z up to and including u^max_order.
  Laurent laurent_at_infinity(int max_order) const;

  /// Finite points carrying a principal part.
  std::vector<cplx> pole_points() const;
  /// Polynomial degree, -1 for the zero polynomial.
  int degree() const;

 private:
  std::vector<Mat2> poly_;
  std::vector<PolarPart> parts_;
};

/// A gauge transformation together with its inverse, both rational.
struct Gauge {
  RationalMatrix g;
  RationalMatrix g_inv;
};

Gauge constant_gauge(const Mat2& g);

/// I + ((z - x)^s - 1) P for a rank-one idempotent P and s = +1 or -1.
Gauge rank_one_power_gauge(const Mat2& projector, cplx x, int s);

/// Rank-one idempotent with image u and kernel spanned by k.
Mat2 projector(const Vec2& image, const Vec2& kernel);

/// G B G^-1 + G' G^-1 as an exact rational matrix (up to roundoff).
RationalMatrix transform_connection(const RationalMatrix& b, const Gauge& gauge);

/// Points p and q agree to relative precision 1e-12.
bool same_point(cplx p, cplx q);

}  // namespace schles
