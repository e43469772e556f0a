#pragma once

#include "schles/types.hpp"

namespace schles {

/// z -> (a z + b) / (c z + d) acting on the Riemann sphere.
struct Moebius {
  cplx a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  SpherePoint operator()(const SpherePoint& p) const;
  cplx operator()(cplx z) const { return (a * z + b) / (c * z + d); }
  /// Derivative at a finite point where the map is finite.
  cplx derivative(cplx z) const { return (a * d - b * c) / ((c * z + d) * (c * z + d)); }

  Moebius inverse() const { return {d, -b, -c, a}; }
  /// (this o other)(z) = this(other(z)).
  Moebius compose(const Moebius& other) const;

  /// The map sending p0, p1, pinf to 0, 1, infinity.
  static Moebius to_standard(const SpherePoint& p0, const SpherePoint& p1, const SpherePoint& pinf);
};

}  // namespace schles
