#include "schles/rational.hpp"

#include <algorithm>
#include <cmath>

namespace schles {

namespace {

// Generalized binomial (-m choose k) for m >= 1.
double neg_binom(int m, int k) {
  double r = 1.0;
  for (int j = 0; j < k; ++j) r *= static_cast<double>(-m - j) / (j + 1);
  return r;
}

double binom(int n, int k) {
  double r = 1.0;
  for (int j = 0; j < k; ++j) r *= static_cast<double>(n - j) / (j + 1);
  return r;
}

Laurent zero_laurent(int low, int high) {
  Laurent l;
  l.low = low;
  l.c.assign(std::max(0, high - low + 1), Mat2::Zero());
  return l;
}

int min_low(const Laurent& l) { return std::min(l.low, 0); }

}  // namespace

bool same_point(cplx p, cplx q) {
  return std::abs(p - q) <= 1e-12 * std::max(1.0, std::max(std::abs(p), std::abs(q)));
}

Mat2 Laurent::at(int k) const {
  if (k < low || k > high()) return Mat2::Zero();
  return c[k - low];
}

Laurent multiply(const Laurent& a, const Laurent& b, int max_order) {
  Laurent r = zero_laurent(a.low + b.low, max_order);
  for (int i = a.low; i <= a.high(); ++i) {
    for (int j = b.low; j <= b.high(); ++j) {
      if (i + j > max_order) break;
      r.c[i + j - r.low] += a.c[i - a.low] * b.c[j - b.low];
    }
  }
  return r;
}

Laurent add(const Laurent& a, const Laurent& b) {
  Laurent r = zero_laurent(std::min(a.low, b.low), std::max(a.high(), b.high()));
  for (int k = r.low; k <= r.high(); ++k) r.c[k - r.low] = a.at(k) + b.at(k);
  return r;
}

RationalMatrix RationalMatrix::constant(const Mat2& m) {
  RationalMatrix r;
  r.poly_.push_back(m);
  return r;
}

RationalMatrix& RationalMatrix::add_polar(cplx p, int order, const Mat2& c) {
  auto it = std::find_if(parts_.begin(), parts_.end(),
                         [&](const PolarPart& pp) { return same_point(pp.point, p); });
  if (it == parts_.end()) {
    parts_.push_back(PolarPart{p, {}});
    it = parts_.end() - 1;
  }
  if (static_cast<int>(it->coeffs.size()) < order) it->coeffs.resize(order, Mat2::Zero());
  it->coeffs[order - 1] += c;
  return *this;
}

RationalMatrix& RationalMatrix::add_monomial(int degree, const Mat2& c) {
  if (static_cast<int>(poly_.size()) <= degree) poly_.resize(degree + 1, Mat2::Zero());
  poly_[degree] += c;
  return *this;
}

Mat2 RationalMatrix::operator()(cplx z) const {
  Mat2 r = Mat2::Zero();
  for (int k = static_cast<int>(poly_.size()) - 1; k >= 0; --k) r = r * z + poly_[k];
  for (const auto& pp : parts_) {
    const cplx h = 1.0 / (z - pp.point);
    cplx hk = h;
    for (const auto& c : pp.coeffs) {
      r += c * hk;
      hk *= h;
    }
  }
  return r;
}

RationalMatrix RationalMatrix::derivative() const {
  RationalMatrix r;
  for (std::size_t k = 1; k < poly_.size(); ++k)
    r.add_monomial(static_cast<int>(k) - 1, poly_[k] * static_cast<double>(k));
  for (const auto& pp : parts_)
    for (std::size_t k = 0; k < pp.coeffs.size(); ++k) {
      const int m = static_cast<int>(k) + 1;
      r.add_polar(pp.point, m + 1, pp.coeffs[k] * static_cast<double>(-m));
    }
  return r;
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& other) const {
  RationalMatrix r = *this;
  for (std::size_t k = 0; k < other.poly_.size(); ++k)
    r.add_monomial(static_cast<int>(k), other.poly_[k]);
  for (const auto& pp : other.parts_)
    for (std::size_t k = 0; k < pp.coeffs.size(); ++k)
      r.add_polar(pp.point, static_cast<int>(k) + 1, pp.coeffs[k]);
  return r;
}

RationalMatrix RationalMatrix::scaled(cplx s) const {
  RationalMatrix r = *this;
  for (auto& m : r.poly_) m *= s;
  for (auto& pp : r.parts_)
    for (auto& m : pp.coeffs) m *= s;
  return r;
}

Laurent RationalMatrix::laurent_at(cplx p, int max_order) const {
  int low = 0;
  for (const auto& pp : parts_)
    if (same_point(pp.point, p)) low = std::min(low, -pp.order());
  Laurent r = zero_laurent(low, max_order);
  if (max_order < low) return r;

  // polynomial: z^k = (p + h)^k
  for (std::size_t k = 0; k < poly_.size(); ++k)
    for (int j = 0; j <= static_cast<int>(k) && j <= max_order; ++j)
      r.c[j - low] += poly_[k] * (binom(static_cast<int>(k), j) *
                                  std::pow(p, static_cast<int>(k) - j));

  for (const auto& pp : parts_) {
    if (same_point(pp.point, p)) {
      for (int m = 1; m <= pp.order(); ++m)
        if (-m <= max_order) r.c[-m - low] += pp.coeffs[m - 1];
      continue;
    }
    // (z - q)^-m = d^-m (1 + h/d)^-m with d = p - q
    const cplx d = p - pp.point;
    for (int m = 1; m <= pp.order(); ++m) {
      const cplx dm = std::pow(d, -m);
      cplx dk = 1.0;
      for (int k = 0; k <= max_order; ++k) {
        r.c[k - low] += pp.coeffs[m - 1] * (neg_binom(m, k) * dm * dk);
        dk /= d;
      }
    }
  }
  return r;
}

Laurent RationalMatrix::laurent_at_infinity(int max_order) const {
  const int low = -std::max(0, degree());
  Laurent r = zero_laurent(low, max_order);
  if (max_order < low) return r;
  for (std::size_t k = 0; k < poly_.size(); ++k) {
    const int e = -static_cast<int>(k);
    if (e <= max_order) r.c[e - low] += poly_[k];
  }
  // (z - q)^-m = u^m (1 - q u)^-m
  for (const auto& pp : parts_)
    for (int m = 1; m <= pp.order(); ++m) {
      cplx qk = 1.0;
      for (int k = 0; m + k <= max_order; ++k) {
        r.c[m + k - low] += pp.coeffs[m - 1] * (binom(m + k - 1, k) * qk);
        qk *= pp.point;
      }
    }
  return r;
}

std::vector<cplx> RationalMatrix::pole_points() const {
  std::vector<cplx> pts;
  for (const auto& pp : parts_) pts.push_back(pp.point);
  return pts;
}

int RationalMatrix::degree() const {
  for (int k = static_cast<int>(poly_.size()) - 1; k >= 0; --k)
    if (poly_[k] != Mat2::Zero()) return k;
  return -1;
}

Gauge constant_gauge(const Mat2& g) {
  return Gauge{RationalMatrix::constant(g), RationalMatrix::constant(g.inverse())};
}

Mat2 projector(const Vec2& image, const Vec2& kernel) {
  // P = u w^T / (w^T u) with w^T k = 0
  const Vec2 w(-kernel(1), kernel(0));
  const cplx denom = w.cwiseProduct(image).sum();  // bilinear w^T u
  if (std::abs(denom) < 1e-14 * image.norm() * kernel.norm())
    throw DegenerateResidue("projector: image and kernel lines coincide");
  return image * w.transpose() / denom;
}

Gauge rank_one_power_gauge(const Mat2& p, cplx x, int s) {
  const Mat2 id = Mat2::Identity();
  RationalMatrix up, down;
  // (z - x) P and P / (z - x)
  up.add_monomial(0, id - p - x * p).add_monomial(1, p);
  down.add_monomial(0, id - p).add_polar(x, 1, p);
  if (s > 0) return Gauge{up, down};
  return Gauge{down, up};
}

RationalMatrix transform_connection(const RationalMatrix& b, const Gauge& gauge) {
  const RationalMatrix dg = gauge.g.derivative();

  std::vector<cplx> points;
  for (const RationalMatrix* m : {&b, &gauge.g, &gauge.g_inv})
    for (cplx p : m->pole_points())
      if (std::none_of(points.begin(), points.end(), [&](cplx q) { return same_point(p, q); }))
        points.push_back(p);

  RationalMatrix out;
  // Finite principal parts: expand each factor far enough that every
  // negative power of the product is exact.
  for (cplx p : points) {
    const Laurent lg0 = gauge.g.laurent_at(p, 0);
    const Laurent lb0 = b.laurent_at(p, 0);
    const Laurent li0 = gauge.g_inv.laurent_at(p, 0);
    const Laurent ld0 = dg.laurent_at(p, 0);
    const int depth = -min_low(lg0) - min_low(lb0) - min_low(li0) - min_low(ld0) + 1;
    const Laurent lg = gauge.g.laurent_at(p, depth);
    const Laurent lb = b.laurent_at(p, depth);
    const Laurent li = gauge.g_inv.laurent_at(p, depth);
    const Laurent ld = dg.laurent_at(p, depth);
    const Laurent total = add(multiply(multiply(lg, lb, depth), li, -1), multiply(ld, li, -1));
    for (int k = total.low; k <= -1; ++k)
      if (total.at(k) != Mat2::Zero()) out.add_polar(p, -k, total.at(k));
  }

  // Polynomial part from the expansion at infinity in u = 1/z.
  const Laurent lg0 = gauge.g.laurent_at_infinity(0);
  const Laurent lb0 = b.laurent_at_infinity(0);
  const Laurent li0 = gauge.g_inv.laurent_at_infinity(0);
  const Laurent ld0 = dg.laurent_at_infinity(0);
  const int depth = -min_low(lg0) - min_low(lb0) - min_low(li0) - min_low(ld0) + 1;
  const Laurent total =
      add(multiply(multiply(gauge.g.laurent_at_infinity(depth), b.laurent_at_infinity(depth), depth),
                   gauge.g_inv.laurent_at_infinity(depth), 0),
          multiply(dg.laurent_at_infinity(depth), gauge.g_inv.laurent_at_infinity(depth), 0));
  for (int k = total.low; k <= 0; ++k)
    if (total.at(k) != Mat2::Zero()) out.add_monomial(-k, total.at(k));
  return out;
}

}  // namespace schles
