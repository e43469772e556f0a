#include "schles/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <sstream>

#include "schles/modification.hpp"

namespace schles {

// ---------------------------------------------------------------------------
// Moebius maps

SpherePoint Moebius::operator()(const SpherePoint& p) const {
  if (p.is_infinite()) {
    if (c == cplx(0.0)) return SpherePoint::infinity();
    return SpherePoint(a / c);
  }
  const cplx den = c * p.value() + d;
  if (std::abs(den) < 1e-300) return SpherePoint::infinity();
  return SpherePoint((a * p.value() + b) / den);
}

Moebius Moebius::compose(const Moebius& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

Moebius Moebius::to_standard(const SpherePoint& p0, const SpherePoint& p1, const SpherePoint& pinf) {
  // (z - p0)(p1 - pinf) / ((z - pinf)(p1 - p0)) with the infinite cases taken as limits
  if (p0.is_infinite()) {
    const cplx b = p1.value(), c = pinf.value();
    return {0.0, b - c, 1.0, -c};
  }
  if (p1.is_infinite()) {
    const cplx a = p0.value(), c = pinf.value();
    return {1.0, -a, 1.0, -c};
  }
  if (pinf.is_infinite()) {
    const cplx a = p0.value(), b = p1.value();
    return {1.0, -a, 0.0, b - a};
  }
  const cplx a = p0.value(), b = p1.value(), c = pinf.value();
  return {b - c, -a * (b - c), b - a, -c * (b - a)};
}

// ---------------------------------------------------------------------------
// Words

namespace {

std::pair<int, int> parse_indices(const std::string& digits, const std::string& token) {
  auto to_index = [&](const std::string& s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), ::isdigit) || std::stoi(s) < 1)
      throw ParseError("bad index in token '" + token + "'");
    return std::stoi(s) - 1;
  };
  const auto us = digits.find('_');
  if (us != std::string::npos) return {to_index(digits.substr(0, us)), to_index(digits.substr(us + 1))};
  if (digits.size() != 2) throw ParseError("token '" + token + "' needs two indices");
  return {to_index(digits.substr(0, 1)), to_index(digits.substr(1, 1))};
}

std::string index_pair(int i, int j) {
  if (i < 9 && j < 9) return std::to_string(i + 1) + std::to_string(j + 1);
  return std::to_string(i + 1) + "_" + std::to_string(j + 1);
}

}  // namespace

TransformWord parse_word(const std::string& text) {
  TransformWord w;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, '.')) {
    if (tok.empty()) throw ParseError("empty token in word '" + text + "'");
    const char kind = tok[0];
    const std::string rest = tok.substr(1);
    if (kind == 's' || kind == 'l') {
      if (rest.empty() || !std::all_of(rest.begin(), rest.end(), ::isdigit) || std::stoi(rest) < 1)
        throw ParseError("bad index in token '" + tok + "'");
      const int k = std::stoi(rest) - 1;
      w.push_back(kind == 's' ? Generator::sigma(k) : Generator::long_shift(k));
    } else if (kind == 'p' || kind == 't') {
      const auto [i, j] = parse_indices(rest, tok);
      if (kind == 'p') {
        if (i == j) throw ParseError("transposition needs distinct indices: '" + tok + "'");
        w.push_back(Generator::perm(i, j));
      } else {
        w.push_back(i == j ? Generator::long_shift(i) : Generator::pair(i, j));
      }
    } else {
      throw ParseError("unknown generator '" + tok + "'");
    }
  }
  return w;
}

std::string format_word(const TransformWord& word) {
  std::string out;
  for (const auto& g : word) {
    if (!out.empty()) out += '.';
    switch (g.kind) {
      case GenKind::sigma: out += "s" + std::to_string(g.i + 1); break;
      case GenKind::perm: out += "p" + index_pair(g.i, g.j); break;
      case GenKind::pair: out += "t" + index_pair(g.i, g.j); break;
      case GenKind::long_shift: out += "l" + std::to_string(g.i + 1); break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Affine elements

AffineElement AffineElement::identity(int n) {
  AffineElement e;
  e.perm.resize(n);
  std::iota(e.perm.begin(), e.perm.end(), 0);
  e.sign.assign(n, 1);
  e.shift2.assign(n, 0);
  return e;
}

AffineElement AffineElement::from(const Generator& g, int n) {
  if (g.i < 0 || g.i >= n || g.j < 0 || g.j >= n)
    throw InvalidSystem("generator index out of range for n = " + std::to_string(n));
  AffineElement e = identity(n);
  switch (g.kind) {
    case GenKind::sigma: e.sign[g.i] = -1; break;
    case GenKind::perm: std::swap(e.perm[g.i], e.perm[g.j]); break;
    case GenKind::pair:
      e.shift2[g.i] += 1;
      e.shift2[g.j] -= 1;
      break;
    case GenKind::long_shift: e.shift2[g.i] += 2; break;
  }
  return e;
}

AffineElement AffineElement::from(const TransformWord& w, int n) {
  AffineElement e = identity(n);
  for (const auto& g : w) e = e.then(from(g, n));
  return e;
}

AffineElement AffineElement::then(const AffineElement& next) const {
  const int n = size();
  AffineElement r;
  r.perm.resize(n);
  r.sign.resize(n);
  r.shift2.resize(n);
  for (int k = 0; k < n; ++k) {
    const int m = next.perm[k];
    r.perm[k] = perm[m];
    r.sign[k] = next.sign[k] * sign[m];
    r.shift2[k] = next.sign[k] * shift2[m] + next.shift2[k];
  }
  return r;
}

AffineElement AffineElement::inverse() const {
  // v = A^-1 (w - b); (A^-1 w)_{perm[k]} = sign[k] w_k
  const int n = size();
  AffineElement r = identity(n);
  for (int k = 0; k < n; ++k) {
    r.perm[perm[k]] = k;
    r.sign[perm[k]] = sign[k];
    r.shift2[perm[k]] = -sign[k] * shift2[k];
  }
  return r;
}

AffineElement AffineElement::power(long k) const {
  AffineElement base = k < 0 ? inverse() : *this;
  AffineElement r = identity(size());
  for (long m = std::labs(k); m > 0; m >>= 1) {
    if (m & 1) r = r.then(base);
    base = base.then(base);
  }
  return r;
}

bool AffineElement::linear_is_identity() const {
  for (int k = 0; k < size(); ++k)
    if (perm[k] != k || sign[k] != 1) return false;
  return true;
}

bool AffineElement::is_identity() const {
  return linear_is_identity() &&
         std::all_of(shift2.begin(), shift2.end(), [](long s) { return s == 0; });
}

bool AffineElement::is_translation() const { return linear_is_identity(); }

std::vector<cplx> AffineElement::apply(const std::vector<cplx>& v) const {
  std::vector<cplx> r(size());
  for (int k = 0; k < size(); ++k)
    r[k] = static_cast<double>(sign[k]) * v.at(perm[k]) + 0.5 * static_cast<double>(shift2[k]);
  return r;
}

std::vector<cplx> act_on_lambda(const TransformWord& word, const std::vector<cplx>& v) {
  std::vector<cplx> r = v;
  for (const auto& g : word) r = AffineElement::from(g, static_cast<int>(v.size())).apply(r);
  return r;
}

FuchsianSystem act_on_system(const TransformWord& word, const FuchsianSystem& system) {
  FuchsianSystem s = system;
  const int n = static_cast<int>(system.size());
  for (const auto& g : word) {
    AffineElement::from(g, n);  // range check
    switch (g.kind) {
      case GenKind::sigma: s = s.flip_marking(g.i); break;
      case GenKind::perm: s = s.swap_poles(g.i, g.j); break;
      case GenKind::pair:
        s = g.i == g.j ? long_shift(s, g.i) : pair_modify(s, {std::size_t(g.i), std::size_t(g.j)});
        break;
      case GenKind::long_shift: s = long_shift(s, g.i); break;
    }
  }
  return s;
}

namespace {

long linear_order(const AffineElement& e) {
  const int n = e.size();
  std::vector<bool> seen(n, false);
  long order = 1;
  for (int k = 0; k < n; ++k) {
    if (seen[k]) continue;
    long len = 0;
    int sgn = 1;
    for (int m = k; !seen[m]; m = e.perm[m]) {
      seen[m] = true;
      sgn *= e.sign[m];
      ++len;
    }
    order = std::lcm(order, sgn < 0 ? 2 * len : len);
  }
  return order;
}

}  // namespace

std::optional<long> word_order(const TransformWord& word, int n) {
  const AffineElement e = AffineElement::from(word, n);
  const long m = linear_order(e);
  // e^m is the translation by sum_{k<m} A^k b; finite order iff it vanishes
  if (e.power(m).is_identity()) return m;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Relation checks

bool CoxeterReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckLine& c) { return c.pass; });
}

std::optional<std::string> CoxeterReport::first_violation() const {
  for (const auto& c : checks)
    if (!c.pass) return c.name + (c.detail.empty() ? "" : ": " + c.detail);
  return std::nullopt;
}

bool LatticeReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckLine& c) { return c.pass; });
}

std::vector<TransformWord> affine_simple_reflections(int n) {
  std::vector<TransformWord> s;
  s.push_back({Generator::sigma(0), Generator::long_shift(0)});  // v_1 -> 1 - v_1
  for (int i = 0; i + 1 < n; ++i) s.push_back({Generator::perm(i, i + 1), Generator::pair(i, i + 1)});
  s.push_back({Generator::sigma(n - 1), Generator::long_shift(n - 1)});
  return s;
}

namespace {

// Exact order of an element, capped; 0 when larger than cap (or infinite).
long exact_order(const AffineElement& e, long cap) {
  AffineElement p = e;
  for (long k = 1; k <= cap; ++k) {
    if (p.is_identity()) return k;
    p = p.then(e);
  }
  return 0;
}

std::vector<cplx> random_rational_vector(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-200, 200);
  std::vector<cplx> v(n);
  for (auto& x : v) x = cplx(num(rng) / 64.0, num(rng) / 64.0);
  return v;
}

bool acts_trivially(const TransformWord& w, int n, int trials, std::mt19937_64& rng) {
  for (int t = 0; t < trials; ++t) {
    const auto v = random_rational_vector(n, rng);
    const auto r = act_on_lambda(w, v);
    for (int k = 0; k < n; ++k)
      if (std::abs(r[k] - v[k]) > 1e-12) return false;
  }
  return true;
}

TransformWord repeat(const TransformWord& w, int times) {
  TransformWord r;
  for (int k = 0; k < times; ++k) r.insert(r.end(), w.begin(), w.end());
  return r;
}

TransformWord concat(const TransformWord& a, const TransformWord& b) {
  TransformWord r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

std::size_t finite_orbit_size(int n) {
  std::vector<double> start(n);
  for (int k = 0; k < n; ++k) start[k] = 1.0 / (k + 1.37) + 0.011 * k * k;
  auto key = [](const std::vector<double>& v) {
    std::vector<long long> k;
    for (double x : v) k.push_back(std::llround(x * 1e9));
    return k;
  };
  std::set<std::vector<long long>> seen{key(start)};
  std::queue<std::vector<double>> todo;
  todo.push(start);
  while (!todo.empty()) {
    const auto v = todo.front();
    todo.pop();
    std::vector<std::vector<double>> next;
    for (int i = 0; i < n; ++i) {
      auto w = v;
      w[i] = -w[i];
      next.push_back(w);
      if (i + 1 < n) {
        w = v;
        std::swap(w[i], w[i + 1]);
        next.push_back(w);
      }
    }
    for (auto& w : next)
      if (seen.insert(key(w)).second) todo.push(w);
  }
  return seen.size();
}

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

}  // namespace

CoxeterReport coxeter_check(int n, int trials, std::uint64_t seed) {
  CoxeterReport rep;
  rep.n = n;
  std::mt19937_64 rng(seed);
  auto add = [&](std::string name, bool pass, std::string detail = "") {
    rep.checks.push_back({std::move(name), pass, std::move(detail)});
  };
  auto order_check = [&](const std::string& name, const TransformWord& w, long expected) {
    const long got = exact_order(AffineElement::from(w, n), 16);
    const bool numeric = acts_trivially(repeat(w, static_cast<int>(expected)), n, trials, rng);
    add(name, got == expected && numeric,
        "order " + (got ? std::to_string(got) : std::string(">16")) + ", expected " +
            std::to_string(expected));
  };

  for (int i = 0; i < n; ++i) order_check("s" + std::to_string(i + 1) + " involution", {Generator::sigma(i)}, 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      order_check("(" + std::to_string(i + 1) + " " + std::to_string(j + 1) + ") involution",
                  {Generator::perm(i, j)}, 2);
  for (int i = 0; i + 2 < n; ++i)
    order_check("adjacent transpositions at " + std::to_string(i + 1) + " order 3",
                {Generator::perm(i, i + 1), Generator::perm(i + 1, i + 2)}, 3);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j)
        order_check("s" + std::to_string(i + 1) + "(" + std::to_string(i + 1) + " " +
                        std::to_string(j + 1) + ") order 4",
                    {Generator::sigma(i), Generator::perm(i, j)}, 4);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      order_check("s" + std::to_string(i + 1) + " s" + std::to_string(j + 1) + " commute",
                  {Generator::sigma(i), Generator::sigma(j)}, 2);

  // Affine Coxeter graph: double bonds at both ends, simple bonds inside.
  const auto s = affine_simple_reflections(n);
  for (int a = 0; a <= n; ++a) {
    order_check("affine s" + std::to_string(a) + " involution", s[a], 2);
    for (int b = a + 1; b <= n; ++b) {
      long m = 2;
      if (b == a + 1) m = (a == 0 || b == n) ? 4 : 3;
      order_check("affine (s" + std::to_string(a) + " s" + std::to_string(b) + ")^" + std::to_string(m),
                  concat(s[a], s[b]), m);
    }
  }

  // Translations: commuting, infinite order, rank n.
  std::vector<TransformWord> trans;
  for (int i = 0; i + 1 < n; ++i) trans.push_back({Generator::pair(i, i + 1)});
  trans.push_back({Generator::long_shift(n - 1)});
  bool commute = true, infinite = true;
  for (const auto& a : trans) {
    infinite = infinite && !word_order(a, n).has_value();
    for (const auto& b : trans)
      commute = commute && AffineElement::from(concat(a, b), n) == AffineElement::from(concat(b, a), n);
  }
  add("translations commute", commute);
  add("translations have infinite order", infinite);
  // rank: the doubled shift vectors are triangular with nonzero diagonal
  Eigen::MatrixXd m(n, n);
  for (int r = 0; r < n; ++r) {
    const auto e = AffineElement::from(trans[r], n);
    for (int c = 0; c < n; ++c) m(r, c) = static_cast<double>(e.shift2[c]);
  }
  const double det = m.determinant();
  add("translation lattice has rank n", std::abs(det) > 0.5, "det " + std::to_string(det));

  rep.finite_orbit = finite_orbit_size(n);
  const std::size_t expected = (std::size_t{1} << n) * factorial(n);
  add("finite part orbit size", rep.finite_orbit == expected,
      std::to_string(rep.finite_orbit) + " vs 2^n n! = " + std::to_string(expected));
  return rep;
}

LatticeReport translation_lattice(int n) {
  LatticeReport rep;
  rep.n = n;
  auto add = [&](std::string name, bool pass, std::string detail = "") {
    rep.checks.push_back({std::move(name), pass, std::move(detail)});
  };

  // Shift vectors in lambda units: pair = (e_i - e_j)/2, long = e_k.
  bool units = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto e = AffineElement::from(Generator::pair(i, j), n);
      units = units && e.shift2[i] == 1 && e.shift2[j] == -1;
    }
  for (int k = 0; k < n; ++k) units = units && AffineElement::from(Generator::long_shift(k), n).shift2[k] == 2;
  add("pair = (e_i - e_j)/2, long = e_k", units);

  // Closure: conjugating a translation by the finite group gives a translation.
  std::vector<Generator> gens;
  for (int i = 0; i < n; ++i) gens.push_back(Generator::sigma(i));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) gens.push_back(Generator::perm(i, j));
  bool closed = true;
  for (const auto& w : gens)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) {
        const Generator t = j == k ? Generator::long_shift(k) : Generator::pair(k, j);
        const auto we = AffineElement::from(w, n);
        closed = closed && we.inverse().then(AffineElement::from(t, n)).then(we).is_translation();
      }
  add("finite-group conjugates of translations are translations", closed);

  // Equivariance examples.
  {
    const auto c = AffineElement::from(TransformWord{Generator::perm(0, 1), Generator::long_shift(0),
                                                     Generator::perm(0, 1)}, n);
    add("(1 2) l1 (1 2) = l2", c == AffineElement::from(Generator::long_shift(1), n));
    const auto d = AffineElement::from(TransformWord{Generator::sigma(0), Generator::long_shift(0),
                                                     Generator::sigma(0)}, n);
    add("s1 l1 s1 shifts by -e_1", d.is_translation() && d.shift2[0] == -2);
  }

  // Breadth-first search over words of length <= 4.
  std::vector<Generator> all = gens;
  for (int i = 0; i < n; ++i) {
    all.push_back(Generator::long_shift(i));
    for (int j = 0; j < n; ++j)
      if (i != j) all.push_back(Generator::pair(i, j));
  }
  std::set<AffineElement, bool (*)(const AffineElement&, const AffineElement&)> seen(
      [](const AffineElement& a, const AffineElement& b) {
        return std::tie(a.perm, a.sign, a.shift2) < std::tie(b.perm, b.sign, b.shift2);
      });
  std::vector<AffineElement> layer{AffineElement::identity(n)};
  seen.insert(layer[0]);
  std::set<std::vector<long>> shifts;
  for (int len = 1; len <= 4; ++len) {
    std::vector<AffineElement> next;
    for (const auto& e : layer)
      for (const auto& g : all) {
        const auto f = e.then(AffineElement::from(g, n));
        if (seen.insert(f).second) next.push_back(f);
      }
    for (const auto& e : next)
      if (e.is_translation()) shifts.insert(e.shift2);
    layer = std::move(next);
  }
  rep.reachable.assign(shifts.begin(), shifts.end());

  bool in_lattice = true;
  for (const auto& v : rep.reachable) {
    long sum = 0;
    for (long x : v) sum += x;
    in_lattice = in_lattice && sum % 2 == 0;
  }
  add("doubled shifts lie in <2e_i, e_i +- e_j>", in_lattice);

  bool generators = true;
  for (int i = 0; i < n; ++i)
    for (int sgn : {1, -1}) {
      std::vector<long> v(n, 0);
      v[i] = 2 * sgn;
      generators = generators && shifts.count(v);
      for (int j = i + 1; j < n; ++j)
        for (int sgn2 : {1, -1}) {
          std::vector<long> w(n, 0);
          w[i] = sgn;
          w[j] = sgn2;
          generators = generators && shifts.count(w);
        }
    }
  add("doubled shifts contain +-2e_i and +-e_i +- e_j", generators,
      std::to_string(rep.reachable.size()) + " translations reached");
  return rep;
}

FuchsianSystem moebius_normalize(const FuchsianSystem& system, std::size_t i0, std::size_t i1,
                                 std::size_t iinf) {
  const Moebius m = Moebius::to_standard(system.pole(i0), system.pole(i1), system.pole(iinf));
  std::vector<SpherePoint> poles;
  for (const auto& p : system.poles()) poles.push_back(m(p));
  // Exact images for the three normalized points.
  poles[i0] = SpherePoint(0.0);
  poles[i1] = SpherePoint(1.0);
  poles[iinf] = SpherePoint::infinity();
  return FuchsianSystem(std::move(poles), system.residues(), system.gauge(), system.marking());
}

}  // namespace schles
