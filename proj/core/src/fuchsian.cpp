#include "schles/fuchsian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace schles {

cplx SpherePoint::value() const {
  if (!value_) throw InvalidSystem("value() requested for the point at infinity");
  return *value_;
}

bool SpherePoint::same_as(const SpherePoint& other, double tol) const {
  if (is_infinite() || other.is_infinite()) return is_infinite() == other.is_infinite();
  return std::abs(*value_ - *other.value_) < tol;
}

std::string to_string(const SpherePoint& p) {
  if (p.is_infinite()) return "inf";
  std::ostringstream os;
  os << p.value().real();
  if (p.value().imag() != 0.0) os << (p.value().imag() < 0 ? "" : "+") << p.value().imag() << "i";
  return os.str();
}

namespace {
std::string report_message(const HigherOrderPoleReport& r) {
  std::ostringstream os;
  os << "pole of order " << r.order << " at " << to_string(r.point);
  return os.str();
}

double scale_of(const std::vector<Mat2>& ms) {
  double s = 1.0;
  for (const auto& m : ms) s = std::max(s, norm(m));
  return s;
}
}  // namespace

HigherOrderPole::HigherOrderPole(HigherOrderPoleReport report)
    : Error(report_message(report)), report_(std::move(report)) {}

const char* to_string(GaugeTag tag) { return tag == GaugeTag::sl2 ? "sl2" : "gl2"; }

Mat2 residue_at_infinity(const std::vector<SpherePoint>& poles, const std::vector<Mat2>& residues) {
  Mat2 s = Mat2::Zero();
  for (std::size_t i = 0; i < poles.size(); ++i)
    if (poles[i].is_finite()) s += residues[i];
  return -s;
}

FuchsianSystem::FuchsianSystem(std::vector<SpherePoint> poles, std::vector<Mat2> residues,
                               GaugeTag gauge, std::vector<cplx> marking)
    : poles_(std::move(poles)),
      residues_(std::move(residues)),
      marking_(std::move(marking)),
      gauge_(gauge) {
  validate(true);
}

FuchsianSystem FuchsianSystem::local(std::vector<SpherePoint> poles, std::vector<Mat2> residues,
                                     GaugeTag gauge, std::vector<cplx> marking) {
  FuchsianSystem s;
  s.poles_ = std::move(poles);
  s.residues_ = std::move(residues);
  s.marking_ = std::move(marking);
  s.gauge_ = gauge;
  s.local_ = true;
  s.validate(false);
  return s;
}

FuchsianSystem FuchsianSystem::with_default_marking(std::vector<SpherePoint> poles,
                                                    std::vector<Mat2> residues, GaugeTag gauge) {
  std::vector<cplx> marking;
  for (const auto& r : residues) marking.push_back(eigenvalues(r).first);
  return FuchsianSystem(std::move(poles), std::move(residues), gauge, std::move(marking));
}

void FuchsianSystem::validate(bool zero_sum) const {
  const std::size_t n = poles_.size();
  if (residues_.size() != n || marking_.size() != n)
    throw InvalidSystem("poles, residues and marking must have equal length");
  int infinities = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (poles_[i].is_infinite()) ++infinities;
    for (std::size_t j = i + 1; j < n; ++j)
      if (poles_[i].same_as(poles_[j]))
        throw InvalidSystem("poles " + std::to_string(i) + " and " + std::to_string(j) +
                            " coincide");
  }
  if (infinities > 1) throw InvalidSystem("infinity listed twice");

  const double scale = scale_of(residues_);
  if (gauge_ == GaugeTag::sl2)
    for (std::size_t i = 0; i < n; ++i)
      if (std::abs(residues_[i].trace()) > kTolAlg * scale)
        throw InvalidSystem("residue " + std::to_string(i) + " is not trace-free");

  for (std::size_t i = 0; i < n; ++i) {
    const auto [e1, e2] = eigenvalues(residues_[i]);
    const double d = std::min(std::abs(marking_[i] - e1), std::abs(marking_[i] - e2));
    if (d > 1e-8 * scale)
      throw InvalidSystem("marking " + std::to_string(i) + " is not an eigenvalue of its residue");
  }

  if (!zero_sum) return;
  Mat2 total = Mat2::Zero();
  for (const auto& r : residues_) total += r;
  if (infinities == 0) {
    if (norm(total) > kTolAlg * scale * static_cast<double>(std::max<std::size_t>(n, 1)))
      throw InvalidSystem("finite residues do not sum to zero and infinity is not a pole");
  } else if (norm(total) > kTolAlg * scale * static_cast<double>(n)) {
    throw InvalidSystem("residue at infinity is not minus the sum of the finite residues");
  }
}

int FuchsianSystem::infinity_index() const {
  for (std::size_t i = 0; i < poles_.size(); ++i)
    if (poles_[i].is_infinite()) return static_cast<int>(i);
  return -1;
}

FuchsianSystem FuchsianSystem::with_marking(std::vector<cplx> marking) const {
  FuchsianSystem s = *this;
  s.marking_ = std::move(marking);
  s.validate(!local_);
  return s;
}

FuchsianSystem FuchsianSystem::flip_marking(std::size_t i) const {
  FuchsianSystem s = *this;
  s.marking_.at(i) = unmarked(i);
  return s;
}

FuchsianSystem FuchsianSystem::swap_poles(std::size_t i, std::size_t j) const {
  FuchsianSystem s = *this;
  std::swap(s.poles_.at(i), s.poles_.at(j));
  std::swap(s.residues_.at(i), s.residues_.at(j));
  std::swap(s.marking_.at(i), s.marking_.at(j));
  return s;
}

FuchsianSystem FuchsianSystem::retagged(GaugeTag gauge) const {
  FuchsianSystem s = *this;
  s.gauge_ = gauge;
  if (gauge == GaugeTag::sl2)
    for (auto& r : s.residues_) r -= (r.trace() / 2.0) * Mat2::Identity();
  s.validate(!local_);
  return s;
}

RationalMatrix FuchsianSystem::connection() const {
  RationalMatrix b;
  for (std::size_t i = 0; i < poles_.size(); ++i)
    if (poles_[i].is_finite()) b.add_polar(poles_[i].value(), 1, residues_[i]);
  return b;
}

Mat2 evaluate(const FuchsianSystem& system, cplx z) {
  Mat2 r = Mat2::Zero();
  for (std::size_t i = 0; i < system.size(); ++i) {
    const SpherePoint& p = system.pole(i);
    if (p.is_infinite()) continue;
    const cplx d = z - p.value();
    if (std::abs(d) < kPoleSeparation)
      throw EvaluationAtPole("evaluation point coincides with pole " + std::to_string(i));
    r += system.residue(i) / d;
  }
  return r;
}

std::pair<cplx, cplx> eigenvalues(const Mat2& m) {
  const cplx half = m.trace() / 2.0;
  const cplx disc = std::sqrt(half * half - m.determinant());
  cplx a = half + disc, b = half - disc;
  if (a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag())) std::swap(a, b);
  return {a, b};
}

Vec2 eigenline(const Mat2& m, cplx mu) {
  // Rows of (m - mu) annihilate the line; take the orthogonal of the larger row.
  const Mat2 a = m - mu * Mat2::Identity();
  Vec2 v1(-a(0, 1), a(0, 0));
  Vec2 v2(-a(1, 1), a(1, 0));
  Vec2 v = v1.norm() >= v2.norm() ? v1 : v2;
  if (v.norm() == 0.0) v = Vec2(1.0, 0.0);  // m = mu * I: every line works
  return std::abs(v(0)) >= std::abs(v(1)) ? Vec2(v / v(0)) : Vec2(v / v(1));
}

double line_distance(const Vec2& a, const Vec2& b) {
  return std::abs(a(0) * b(1) - a(1) * b(0)) / (a.norm() * b.norm());
}

EigenEntry eigen_data(const Mat2& residue, cplx marked) {
  const auto [e1, e2] = eigenvalues(residue);
  const double scale = std::max(1.0, norm(residue));
  if (std::abs(e1 - e2) < kDegenerateGap * scale)
    throw DegenerateResidue("residue has a repeated eigenvalue");
  const bool first = std::abs(marked - e1) <= std::abs(marked - e2);
  EigenEntry e;
  e.lambda = first ? e1 : e2;
  e.other = first ? e2 : e1;
  e.plus = eigenline(residue, e.lambda);
  e.minus = eigenline(residue, e.other);
  return e;
}

EigenEntry eigen_data(const FuchsianSystem& system, std::size_t i) {
  return eigen_data(system.residue(i), system.marked(i));
}

bool eigenvalue_condition(const std::vector<cplx>& lambdas, double tol) {
  const std::size_t n = lambdas.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += (mask >> i & 1) ? -lambdas[i] : lambdas[i];
    if (std::abs(s.imag()) <= tol && std::abs(s.real() - std::round(s.real())) <= tol)
      return false;
  }
  return true;
}

namespace {

cplx nearest_eigenvalue(const Mat2& m, cplx target) {
  const auto [e1, e2] = eigenvalues(m);
  return std::abs(e1 - target) <= std::abs(e2 - target) ? e1 : e2;
}

bool all_trace_free(const std::vector<Mat2>& rs) {
  const double scale = scale_of(rs);
  return std::all_of(rs.begin(), rs.end(),
                     [&](const Mat2& r) { return std::abs(r.trace()) <= kTolAlg * scale * 10; });
}

FuchsianSystem assemble(std::vector<SpherePoint> poles, std::vector<Mat2> residues,
                        std::vector<cplx> marking, GaugeTag tag, bool local) {
  if (tag == GaugeTag::sl2 && !all_trace_free(residues)) tag = GaugeTag::gl2;
  if (tag == GaugeTag::sl2)
    for (auto& r : residues) r -= (r.trace() / 2.0) * Mat2::Identity();
  if (local) return FuchsianSystem::local(std::move(poles), std::move(residues), tag, std::move(marking));
  return FuchsianSystem(std::move(poles), std::move(residues), tag, std::move(marking));
}

}  // namespace

FuchsianSystem apply_gauge(const FuchsianSystem& system, const Gauge& gauge,
                           const GaugeOptions& options) {
  const RationalMatrix out = transform_connection(system.connection(), gauge);
  const std::size_t n = system.size();

  double scale = scale_of(system.residues());
  for (const auto& pp : out.parts()) scale = std::max(scale, norm(pp.coeffs[0]));
  const double cut = options.higher_order_tol * scale;

  for (const auto& pp : out.parts())
    for (int k = pp.order(); k >= 2; --k)
      if (norm(pp.coeffs[k - 1]) > cut)
        throw HigherOrderPole({SpherePoint(pp.point), k, pp.coeffs[k - 1]});
  for (int k = out.degree(); k >= 0; --k)
    if (norm(out.polynomial()[k]) > cut)
      throw HigherOrderPole({SpherePoint::infinity(), k + 2, out.polynomial()[k]});

  std::vector<SpherePoint> poles = system.poles();
  std::vector<Mat2> residues(n, Mat2::Zero());
  std::vector<bool> used(out.parts().size(), false);
  for (std::size_t i = 0; i < n; ++i) {
    if (poles[i].is_infinite()) continue;
    for (std::size_t k = 0; k < out.parts().size(); ++k)
      if (!used[k] && same_point(out.parts()[k].point, poles[i].value())) {
        residues[i] = out.parts()[k].coeffs[0];
        used[k] = true;
      }
  }
  for (std::size_t k = 0; k < out.parts().size(); ++k)
    if (!used[k] && norm(out.parts()[k].coeffs[0]) > cut) {
      poles.emplace_back(out.parts()[k].point);
      residues.push_back(out.parts()[k].coeffs[0]);
    }

  const int inf = system.infinity_index();
  const Mat2 r_inf = residue_at_infinity(poles, residues);
  if (inf >= 0 && inf + 1 == static_cast<int>(n) && poles.size() == n && norm(r_inf) <= cut) {
    // A trailing infinity whose residue vanished (e.g. a compensating
    // modification undone) stops being a pole.
    poles.pop_back();
    residues.pop_back();
  } else if (inf >= 0) {
    residues[inf] = r_inf;
  } else if (!system.is_local() && norm(r_inf) > cut) {
    poles.push_back(SpherePoint::infinity());
    residues.push_back(r_inf);
  }

  std::vector<cplx> marking;
  for (std::size_t i = 0; i < poles.size(); ++i) {
    if (i < n && i < system.size()) {
      const cplx target =
          options.expected_marking.empty() ? system.marked(i) : options.expected_marking.at(i);
      marking.push_back(nearest_eigenvalue(residues[i], target));
    } else {
      marking.push_back(eigenvalues(residues[i]).first);
    }
  }
  return assemble(std::move(poles), std::move(residues), std::move(marking), system.gauge(),
                  system.is_local());
}

FuchsianSystem add_scalar_form(const FuchsianSystem& system, const std::vector<cplx>& coeffs) {
  if (coeffs.size() != system.size()) throw InvalidSystem("add_scalar_form: length mismatch");
  std::vector<Mat2> residues = system.residues();
  std::vector<cplx> marking = system.marking();
  const int inf = system.infinity_index();
  for (std::size_t i = 0; i < system.size(); ++i) {
    if (static_cast<int>(i) == inf) continue;
    residues[i] += coeffs[i] * Mat2::Identity();
    marking[i] += coeffs[i];
  }
  if (inf >= 0) {
    const Mat2 r = residue_at_infinity(system.poles(), residues);
    marking[inf] = nearest_eigenvalue(r, marking[inf] + (r - residues[inf]).trace() / 2.0);
    residues[inf] = r;
  }
  return assemble(system.poles(), std::move(residues), std::move(marking), system.gauge(),
                  system.is_local());
}

}  // namespace schles
