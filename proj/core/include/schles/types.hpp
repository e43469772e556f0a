#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace schles {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

// Roundoff-level checks (exact algebraic identities in double precision).
inline constexpr double kTolAlg = 1e-12;
// Quantities that pass through ODE integration.
inline constexpr double kTolNum = 1e-6;
// Minimal separation between distinct poles, and between a pole and an
// evaluation point.
inline constexpr double kPoleSeparation = 1e-9;
// Eigenvalue gap below which a residue counts as degenerate.
inline constexpr double kDegenerateGap = 1e-9;

/// A point of the Riemann sphere: a finite complex number or infinity.
class SpherePoint {
 public:
  SpherePoint() = default;
  SpherePoint(cplx z) : value_(z) {}  // NOLINT: implicit on purpose
  SpherePoint(double x) : value_(cplx(x, 0.0)) {}  // NOLINT

  static SpherePoint infinity() { return SpherePoint(std::nullopt); }

  bool is_infinite() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }
  cplx value() const;

  bool same_as(const SpherePoint& other, double tol = kPoleSeparation) const;

 private:
  explicit SpherePoint(std::nullopt_t) : value_(std::nullopt) {}
  std::optional<cplx> value_ = cplx{};
};

std::string to_string(const SpherePoint& p);

// ---------------------------------------------------------------------------
// Errors. Every failure mode the library reports has its own type so callers
// (and tests) can catch precisely what they expect.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SCHLES_DEFINE_ERROR(Name)          \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

SCHLES_DEFINE_ERROR(InvalidSystem);
SCHLES_DEFINE_ERROR(EvaluationAtPole);
SCHLES_DEFINE_ERROR(DegenerateResidue);
SCHLES_DEFINE_ERROR(GaugeTagMismatch);
SCHLES_DEFINE_ERROR(PathTooClose);
SCHLES_DEFINE_ERROR(StepUnderflow);
SCHLES_DEFINE_ERROR(ReducibleRepresentation);
SCHLES_DEFINE_ERROR(FuchsViolation);
SCHLES_DEFINE_ERROR(OutOfDisk);
SCHLES_DEFINE_ERROR(NonconvergentParams);
SCHLES_DEFINE_ERROR(ResonantParameters);
SCHLES_DEFINE_ERROR(SingularState);
SCHLES_DEFINE_ERROR(DegenerateOffDiagonal);
SCHLES_DEFINE_ERROR(PoleCollision);
SCHLES_DEFINE_ERROR(ParseError);

#undef SCHLES_DEFINE_ERROR

/// A pole of order >= 2 appeared after a gauge transformation.
struct HigherOrderPoleReport {
  SpherePoint point;
  int order = 0;
  Mat2 leading;  // coefficient of (z-p)^-order, or of z^(order-2) at infinity
};

class HigherOrderPole : public Error {
 public:
  explicit HigherOrderPole(HigherOrderPoleReport report);
  const HigherOrderPoleReport& report() const { return report_; }

 private:
  HigherOrderPoleReport report_;
};

inline double norm(const Mat2& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace schles
