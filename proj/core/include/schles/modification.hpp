#pragma once

#include "schles/fuchsian.hpp"

namespace schles {

enum class StepDirection { lower, upper };
enum class LineSelector { plus, minus, explicit_line };

/// One Hecke modification at a finite pole.
///
/// Lower at U keeps U and scales the complementary line by (z - x); upper at
/// U scales U by (z - x)^-1 and keeps the complement. With this glueing,
/// lower at l- raises the marked eigenvalue by 1 and upper at l+ lowers it
/// by 1.
struct ModificationStep {
  std::size_t pole = 0;
  StepDirection direction = StepDirection::lower;
  LineSelector selector = LineSelector::plus;
  Vec2 line{1.0, 0.0};        // used with explicit_line
  Vec2 complement{0.0, 1.0};  // used with explicit_line
  bool allow_non_invariant = false;
};

struct PairSpec {
  std::size_t i = 0;
  std::size_t j = 0;
};

/// The rational gauge realizing a step, as G = P diag(.) P^-1.
Gauge glueing_matrix(const FuchsianSystem& system, const ModificationStep& step);

/// Applies one modification. The compensating change of degree happens at
/// infinity, which may therefore become (or stop being) a pole.
FuchsianSystem apply_step(const FuchsianSystem& system, const ModificationStep& step);

/// (lower at l_i-, upper at l_j+, plus omega_ij): lambda_i + 1/2, lambda_j - 1/2.
FuchsianSystem pair_modify(const FuchsianSystem& system, const PairSpec& spec);

/// The Schlesinger gauge used by pair_modify before the scalar twist.
Gauge pair_gauge(const FuchsianSystem& system, const PairSpec& spec);

/// lambda_k + 1, obtained as two short shifts through an auxiliary pole (the
/// one whose gauge keeps the residues smallest).
FuchsianSystem long_shift(const FuchsianSystem& system, std::size_t k);

enum class Slot { marked, unmarked };

/// gl2 shift: the chosen eigenvalue at i moves by sign_i, the chosen one at j
/// by -sign_i. No scalar twist, so the monodromy is preserved exactly.
struct Gl2Shift {
  Slot slot_i = Slot::marked;
  Slot slot_j = Slot::marked;
  int sign_i = +1;
};

FuchsianSystem gl2_pair_modify(const FuchsianSystem& system, const PairSpec& spec,
                               const Gl2Shift& shift);

}  // namespace schles
