#include "schles/expression.hpp"

#include <algorithm>
#include <cmath>

#include "schles/heun.hpp"
#include "schles/hypergeometric.hpp"

namespace schles {

cplx Affine::eval(const std::array<cplx, 4>& v) const {
  cplx s = static_cast<double>(c[4]);
  for (int k = 0; k < 4; ++k) s += static_cast<double>(c[k]) * v[k];
  return s;
}

std::string Affine::str(const std::array<std::string, 4>& names) const {
  std::string out;
  auto term = [&](long coef, const std::string& name) {
    if (coef == 0) return;
    if (coef < 0) out += "-";
    else if (!out.empty()) out += "+";
    const long m = std::labs(coef);
    if (name.empty()) {
      out += std::to_string(m);
    } else {
      if (m != 1) out += std::to_string(m);
      out += name;
    }
  };
  for (int k = 0; k < 4; ++k) term(c[k], names[k]);
  term(c[4], "");
  return out.empty() ? "0" : out;
}

std::array<cplx, 3> SolutionExpression::prefactor_values() const {
  return {prefactor[0].eval(base), prefactor[1].eval(base), prefactor[2].eval(base)};
}

std::array<cplx, 4> SolutionExpression::param_values() const {
  return {params[0].eval(base), params[1].eval(base), params[2].eval(base), params[3].eval(base)};
}

double SolutionExpression::disk_radius() const {
  return kind == FunctionKind::hypergeometric ? 1.0 : std::min(1.0, std::abs(modulus));
}

std::string SolutionExpression::str() const {
  const bool heun = kind == FunctionKind::heun;
  const std::array<std::string, 4> names =
      heun ? std::array<std::string, 4>{"alpha", "beta", "gamma", "delta"}
           : std::array<std::string, 4>{"a", "b", "c", ""};
  std::string out;
  const char* factors[3] = {"z", "(z-1)", "(z-a)"};
  for (int k = 0; k < 3; ++k)
    if (prefactor[k] != Affine{}) out += std::string(factors[k]) + "^{" + prefactor[k].str(names) + "} ";
  out += heun ? "Hl(a'|" : "F(";
  const int np = heun ? 4 : 3;
  for (int k = 0; k < np; ++k) out += (k ? ", " : "") + params[k].str(names);
  out += " | " + map_text + ")";
  return out;
}

namespace {

std::string point_name(const SpherePoint& p, cplx a) {
  if (p.is_infinite()) return "inf";
  const cplx v = p.value();
  if (v == cplx(0.0)) return "0";
  if (v == cplx(1.0)) return "1";
  if (v == a) return "a";
  return "?";
}

// "z - p" with the zero point simplified.
std::string shifted(const std::string& p) { return p == "0" ? "z" : "(z-" + p + ")"; }
std::string diff(const std::string& p, const std::string& q) {
  if (q == "0") return p;
  return "(" + p + "-" + q + ")";
}

std::string map_text(const SpherePoint& p0, const SpherePoint& p1, const SpherePoint& pinf, cplx a) {
  const std::string n0 = point_name(p0, a), n1 = point_name(p1, a), ni = point_name(pinf, a);
  auto times = [](const std::string& k, const std::string& x) { return k == "1" ? x : k + x; };
  if (pinf.is_infinite()) {
    if (n1 == "0") return n0 == "1" ? "1-z" : "(" + n0 + "-z)/" + n0;
    if (n0 == "0") return n1 == "1" ? "z" : "z/" + n1;
    return shifted(n0) + "/" + diff(n1, n0);
  }
  if (p0.is_infinite()) {
    if (n1 == "0") return ni == "1" ? "1/(1-z)" : ni + "/(" + ni + "-z)";
    return diff(n1, ni) + "/" + shifted(ni);
  }
  if (p1.is_infinite()) return shifted(n0) + "/" + shifted(ni);
  if (n1 == "0") {
    const std::string den = times(n0, shifted(ni));
    return times(ni, shifted(n0)) + "/" + (n0 == "1" ? den : "(" + den + ")");
  }
  // constant factors first, unit factors dropped
  auto product = [](const std::string& var, const std::string& k) {
    if (k == "1") return var;
    return k + var;
  };
  const std::string num = product(shifted(n0), diff(n1, ni));
  const std::string den = product(shifted(ni), diff(n1, n0));
  return num + "/" + (den == shifted(ni) && den[0] == '(' ? den : "(" + den + ")");
}

SeriesValue series_at(const SolutionExpression& e, cplx w, double tol) {
  const auto v = e.param_values();
  if (e.kind == FunctionKind::hypergeometric) return gauss_2f1_series({v[0], v[1], v[2]}, w, tol);
  return heun_series({e.modulus, e.accessory, v[0], v[1], v[2], v[3]}, w, tol);
}

}  // namespace

SeriesValue evaluate(const SolutionExpression& e, cplx z, double tol) {
  const cplx w = e.map(z);
  const SeriesValue u = series_at(e, w, tol);
  const Moebius& m = e.map;
  const cplx det = m.a * m.d - m.b * m.c;
  const cplx den = m.c * z + m.d;
  const cplx w1 = det / (den * den);
  const cplx w2 = -2.0 * m.c * det / (den * den * den);

  const auto ex = e.prefactor_values();
  const cplx pts[3] = {0.0, 1.0, e.a};
  cplx logf = 0.0, L = 0.0, dL = 0.0;
  for (int k = 0; k < 3; ++k) {
    if (ex[k] == cplx(0.0)) continue;
    logf += ex[k] * std::log(z - pts[k]);
    L += ex[k] / (z - pts[k]);
    dL -= ex[k] / ((z - pts[k]) * (z - pts[k]));
  }
  const cplx f = std::exp(logf);
  SeriesValue y;
  y.terms = u.terms;
  y.f = f * u.f;
  y.df = f * (L * u.f + u.df * w1);
  y.d2f = f * ((L * L + dL) * u.f + 2.0 * L * u.df * w1 + u.d2f * w1 * w1 + u.df * w2);
  return y;
}

cplx sample_point(const SolutionExpression& e) {
  const cplx w0 = cplx(0.17, 0.05) * e.disk_radius();
  return e.map.inverse()(w0);
}

std::vector<SolutionExpression> build_expressions(FunctionKind kind,
                                                  const std::vector<std::array<Affine, 2>>& exps,
                                                  const std::array<cplx, 4>& base, cplx a, cplx q) {
  const bool heun = kind == FunctionKind::heun;
  const int n = heun ? 4 : 3;
  if (static_cast<int>(exps.size()) != n) throw InvalidSystem("exponent table has the wrong size");
  std::vector<SpherePoint> pts = {SpherePoint(0.0), SpherePoint(1.0)};
  if (heun) pts.push_back(SpherePoint(a));
  pts.push_back(SpherePoint::infinity());
  const int inf_index = n - 1;

  // Original equation, needed for the accessory parameter of Heun images.
  Ode2 original;
  if (heun) {
    const cplx eps = base[0] + base[1] + 1.0 - base[2] - base[3];
    original = heun_ode(a, q, base[0] * base[1], base[2], base[3], eps);
  }

  std::vector<SolutionExpression> out;
  for (int i0 = 0; i0 < n; ++i0)
    for (int i1 = 0; i1 < n; ++i1)
      for (int ii = 0; ii < n; ++ii) {
        if (i0 == i1 || i0 == ii || i1 == ii) continue;
        int ia = -1;
        for (int k = 0; k < n; ++k)
          if (k != i0 && k != i1 && k != ii) ia = k;

        SolutionExpression base_expr;
        base_expr.kind = kind;
        base_expr.map = Moebius::to_standard(pts[i0], pts[i1], pts[ii]);
        base_expr.map_text = map_text(pts[i0], pts[i1], pts[ii], a);
        base_expr.to0 = pts[i0];
        base_expr.to1 = pts[i1];
        base_expr.toinf = pts[ii];
        base_expr.base = base;
        base_expr.a = a;
        if (heun) {
          base_expr.toa = pts[ia];
          base_expr.modulus = base_expr.map(pts[ia]).value();
        }

        const int na = heun ? 2 : 1;
        for (int r0 = 0; r0 < 2; ++r0)
          for (int r1 = 0; r1 < 2; ++r1)
            for (int ra = 0; ra < na; ++ra) {
              SolutionExpression e = base_expr;
              const Affine rho0 = exps[i0][r0], o0 = exps[i0][1 - r0];
              const Affine rho1 = exps[i1][r1], o1 = exps[i1][1 - r1];
              const Affine rhoa = heun ? exps[ia][ra] : Affine{};
              const Affine R = rho0 + rho1 + rhoa;
              e.params[0] = exps[ii][0] + R;
              e.params[1] = exps[ii][1] + R;
              e.params[2] = Affine::constant(1) + rho0 - o0;
              if (heun) e.params[3] = Affine::constant(1) + rho1 - o1;

              // w ~ (z - to0)/(z - toinf), w - 1 ~ (z - to1)/(z - toinf), w - a' ~ (z - toa)/(z - toinf)
              auto add = [&](int point, const Affine& v) {
                if (point != inf_index) e.prefactor[point] = e.prefactor[point] + v;
              };
              add(i0, rho0);
              add(i1, rho1);
              if (heun) add(ia, rhoa);
              add(ii, -R);

              if (heun) {
                // Read q' off the transformed equation at a generic point.
                const auto v = e.param_values();
                const auto ex = e.prefactor_values();
                const cplx w0(0.3127, 0.1711);
                const cplx z0 = e.map.inverse()(w0);
                const cplx zp[3] = {0.0, 1.0, a};
                cplx L = 0.0, dL = 0.0;
                for (int k = 0; k < 3; ++k) {
                  L += ex[k] / (z0 - zp[k]);
                  dL -= ex[k] / ((z0 - zp[k]) * (z0 - zp[k]));
                }
                const cplx w1 = e.map.derivative(z0);
                const cplx Q = (L * L + dL + original.p(z0) * L + original.q(z0)) / (w1 * w1);
                const cplx am = e.modulus;
                e.accessory = w0 - Q * w0 * (w0 - 1.0) * (w0 - am) / (v[0] * v[1]);
              }
              out.push_back(std::move(e));
            }
      }
  return out;
}

namespace {

bool same(cplx x, cplx y) { return std::abs(x - y) <= 1e-10 * std::max(1.0, std::abs(x)); }

// Numerical identity of two expressions (same function up to a constant).
bool coincide(const SolutionExpression& x, const SolutionExpression& y) {
  if (!x.to0.same_as(y.to0) || !x.to1.same_as(y.to1) || !x.toinf.same_as(y.toinf)) return false;
  if (x.kind == FunctionKind::heun && !x.toa.same_as(y.toa)) return false;
  const auto px = x.prefactor_values(), py = y.prefactor_values();
  for (int k = 0; k < 3; ++k)
    if (!same(px[k], py[k])) return false;
  const auto vx = x.param_values(), vy = y.param_values();
  const bool ab = (same(vx[0], vy[0]) && same(vx[1], vy[1])) || (same(vx[0], vy[1]) && same(vx[1], vy[0]));
  return ab && same(vx[2], vy[2]) && same(vx[3], vy[3]);
}

}  // namespace

std::size_t count_distinct(const std::vector<SolutionExpression>& list) {
  std::size_t distinct = 0;
  for (std::size_t i = 0; i < list.size(); ++i) {
    bool dup = false;
    for (std::size_t j = 0; j < i && !dup; ++j) dup = coincide(list[i], list[j]);
    if (!dup) ++distinct;
  }
  return distinct;
}

}  // namespace schles
