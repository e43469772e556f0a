#pragma once

#include <vector>

#include "schles/rational.hpp"
#include "schles/types.hpp"

namespace schles {

enum class GaugeTag { sl2, gl2 };

const char* to_string(GaugeTag tag);

/// Eigen-data of one residue. `lambda` is the marked eigenvalue, `other` the
/// remaining one (equal to -lambda in sl2 mode). Lines are projective: the
/// larger-modulus component is normalized to 1.
struct EigenEntry {
  cplx lambda;
  cplx other;
  Vec2 plus;   // ker(B - lambda)
  Vec2 minus;  // ker(B - other)
};

/// B(z) dz = sum_i B_i dz / (z - x_i). When infinity is listed among the
/// poles, its residue is minus the sum of the finite residues.
class FuchsianSystem {
 public:
  FuchsianSystem() = default;

  /// Validating constructor: distinct poles, sl2 traces, zero-sum condition,
  /// and each marked value must be an eigenvalue of its residue.
  FuchsianSystem(std::vector<SpherePoint> poles, std::vector<Mat2> residues,
                 GaugeTag gauge, std::vector<cplx> marking);

  /// Same checks except the zero-sum condition, for local models such as a
  /// single pole at the origin.
  static FuchsianSystem local(std::vector<SpherePoint> poles, std::vector<Mat2> residues,
                              GaugeTag gauge, std::vector<cplx> marking);

  /// Marks, at every pole, the eigenvalue with the larger real part (ties broken
  /// by imaginary part).
  static FuchsianSystem with_default_marking(std::vector<SpherePoint> poles,
                                             std::vector<Mat2> residues, GaugeTag gauge);

  std::size_t size() const { return poles_.size(); }
  const std::vector<SpherePoint>& poles() const { return poles_; }
  const std::vector<Mat2>& residues() const { return residues_; }
  const std::vector<cplx>& marking() const { return marking_; }
  GaugeTag gauge() const { return gauge_; }
  const SpherePoint& pole(std::size_t i) const { return poles_.at(i); }
  const Mat2& residue(std::size_t i) const { return residues_.at(i); }
  cplx marked(std::size_t i) const { return marking_.at(i); }
  cplx unmarked(std::size_t i) const { return residues_.at(i).trace() - marking_.at(i); }

  /// Index of infinity in the pole list, or -1.
  int infinity_index() const;
  bool is_local() const { return local_; }

  FuchsianSystem with_marking(std::vector<cplx> marking) const;
  FuchsianSystem flip_marking(std::size_t i) const;
  FuchsianSystem swap_poles(std::size_t i, std::size_t j) const;
  /// Same data under another gauge tag (validated; sl2 requires zero traces).
  FuchsianSystem retagged(GaugeTag gauge) const;

  /// B(z) as a rational matrix (finite poles only).
  RationalMatrix connection() const;

 private:
  void validate(bool zero_sum) const;

  std::vector<SpherePoint> poles_;
  std::vector<Mat2> residues_;
  std::vector<cplx> marking_;
  GaugeTag gauge_ = GaugeTag::sl2;
  bool local_ = false;
};

/// sum_i B_i / (z - x_i) over the finite poles.
Mat2 evaluate(const FuchsianSystem& system, cplx z);

EigenEntry eigen_data(const FuchsianSystem& system, std::size_t i);
EigenEntry eigen_data(const Mat2& residue, cplx marked);

/// Both eigenvalues of a 2x2 matrix, ordered by (real, imag) descending.
std::pair<cplx, cplx> eigenvalues(const Mat2& m);

/// Projective eigenline for eigenvalue mu, larger component normalized to 1.
Vec2 eigenline(const Mat2& m, cplx mu);

/// Projective distance between two lines (sine of the angle).
double line_distance(const Vec2& a, const Vec2& b);

/// True iff sum_i e_i lambda_i is never an integer for e in {+1,-1}^n.
bool eigenvalue_condition(const std::vector<cplx>& lambdas, double tol = kTolAlg);

/// Options for apply_gauge.
struct GaugeOptions {
  // Expected marked eigenvalue at each existing pole; empty means "keep the
  // old marked value" (appropriate for gauges that do not move spectra).
  std::vector<cplx> expected_marking;
  // Relative threshold above which an order >= 2 coefficient counts as a
  // genuine higher-order pole.
  double higher_order_tol = 1e-9;
};

/// B' = G B G^-1 + G' G^-1, re-expanded into partial fractions. Throws
/// HigherOrderPole when the result is not Fuchsian. Existing poles keep
/// their slots (even if a residue becomes zero); new points with nonzero
/// residue, including infinity, are appended. The result is tagged sl2 when
/// the input was sl2 and every trace is still zero.
FuchsianSystem apply_gauge(const FuchsianSystem& system, const Gauge& gauge,
                           const GaugeOptions& options = {});

/// Adds the scalar 1-form sum_k c_k dz/(z - x_k) times the identity. The
/// coefficients must sum to zero when infinity is not a pole.
FuchsianSystem add_scalar_form(const FuchsianSystem& system, const std::vector<cplx>& coeffs);

/// Residue at infinity implied by the finite residues.
Mat2 residue_at_infinity(const std::vector<SpherePoint>& poles, const std::vector<Mat2>& residues);

}  // namespace schles
