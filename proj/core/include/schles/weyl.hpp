#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schles/fuchsian.hpp"
#include "schles/moebius.hpp"

namespace schles {

enum class GenKind { sigma, perm, pair, long_shift };

/// A generator of W(C_n^), indices 0-based.
struct Generator {
  GenKind kind = GenKind::sigma;
  int i = 0;
  int j = 0;

  static Generator sigma(int i) { return {GenKind::sigma, i, i}; }
  static Generator perm(int i, int j) { return {GenKind::perm, i, j}; }
  static Generator pair(int i, int j) { return {GenKind::pair, i, j}; }
  static Generator long_shift(int k) { return {GenKind::long_shift, k, k}; }

  friend bool operator==(const Generator&, const Generator&) = default;
};

using TransformWord = std::vector<Generator>;

/// Dot-separated tokens applied left to right: s1, p12, t12, l1 (1-based).
/// t_kk is read as the long shift l_k. Indices above 9 are written with an
/// underscore, e.g. p10_11.
TransformWord parse_word(const std::string& text);
std::string format_word(const TransformWord& word);

/// v -> A v + b with A a signed permutation and b half-integral.
/// (A v)_k = sign[k] * v[perm[k]]; shift2 holds 2b exactly.
struct AffineElement {
  std::vector<int> perm;
  std::vector<int> sign;
  std::vector<long> shift2;

  static AffineElement identity(int n);
  static AffineElement from(const Generator& g, int n);
  static AffineElement from(const TransformWord& w, int n);

  int size() const { return static_cast<int>(perm.size()); }
  /// Apply this map, then `next`.
  AffineElement then(const AffineElement& next) const;
  AffineElement inverse() const;
  AffineElement power(long k) const;
  bool is_identity() const;
  bool is_translation() const;
  bool linear_is_identity() const;
  std::vector<cplx> apply(const std::vector<cplx>& v) const;

  friend bool operator==(const AffineElement&, const AffineElement&) = default;
};

std::vector<cplx> act_on_lambda(const TransformWord& word, const std::vector<cplx>& v);

/// sigma flips a marking, perm relabels poles, pair and long modify.
FuchsianSystem act_on_system(const TransformWord& word, const FuchsianSystem& system);

/// Exact order of the affine map, nullopt when it is infinite.
std::optional<long> word_order(const TransformWord& word, int n);

struct CheckLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CoxeterReport {
  int n = 0;
  std::vector<CheckLine> checks;
  std::size_t finite_orbit = 0;
  bool ok() const;
  std::optional<std::string> first_violation() const;
};

/// Relations of W(C_n^) checked on exact affine elements and on seeded random
/// rational vectors.
CoxeterReport coxeter_check(int n, int trials, std::uint64_t seed = 20240611);

/// The affine simple reflections s_0..s_n of C_n^ as words.
std::vector<TransformWord> affine_simple_reflections(int n);

struct LatticeReport {
  int n = 0;
  std::vector<CheckLine> checks;
  /// Doubled shift vectors of translations reachable by words of length <= 4.
  std::vector<std::vector<long>> reachable;
  bool ok() const;
};

LatticeReport translation_lattice(int n);

/// Applies a Moebius map placing poles i0, i1, iinf at 0, 1, infinity.
/// Residues are unchanged (they are coordinate independent).
FuchsianSystem moebius_normalize(const FuchsianSystem& system, std::size_t i0, std::size_t i1,
                                 std::size_t iinf);

}  // namespace schles
