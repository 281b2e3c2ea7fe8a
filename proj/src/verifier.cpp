#include "harmclass/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "harmclass/oboudi.hpp"

namespace harmclass {

GridSpec GridSpec::default_grid() {
  return GridSpec{{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99}, 128, 1e-9, 1e-6};
}

void GridSpec::validate() const {
  if (radii.empty()) throw std::invalid_argument("GridSpec: at least one radius required");
  for (double r : radii) {
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("GridSpec: radii must lie in (0, 1)");
  }
  if (angles < 8) throw std::invalid_argument("GridSpec: at least 8 angles required");
  if (!(guard_eps > 0.0)) throw std::invalid_argument("GridSpec: guard_eps must be > 0");
  if (!(tol > 0.0)) throw std::invalid_argument("GridSpec: tol must be > 0");
}

cplx GridSpec::point(std::size_t i, int j) const {
  const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(angles);
  return std::polar(radii.at(i), theta);
}

std::vector<cplx> GridSpec::points() const {
  std::vector<cplx> out;
  out.reserve(size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    for (int j = 0; j < angles; ++j) out.push_back(point(i, j));
  }
  return out;
}

ConditionEvaluator::ConditionEvaluator(const HarmonicPoly& f, const ParamSet& p, double guard_eps)
    : du_(apply_harmonic(f, {p.u(), p.lambda()})),
      dv_(apply_harmonic(f, {p.v(), p.lambda()})),
      k_(p.k()),
      alpha_(p.alpha()),
      guard_eps_(guard_eps) {
  if (!(guard_eps_ > 0.0)) throw std::invalid_argument("ConditionEvaluator: guard_eps must be > 0");
}

std::optional<cplx> ConditionEvaluator::ratio(cplx z) const {
  const cplx den = eval(dv_, z);
  if (!(std::abs(den) > guard_eps_)) return std::nullopt;
  return eval(du_, z) / den;
}

std::optional<double> ConditionEvaluator::value(cplx z) const {
  const auto q = ratio(z);
  if (!q) return std::nullopt;
  return q->real() - k_ * std::abs(*q - 1.0) - alpha_;
}

std::optional<double> ConditionEvaluator::value_at_phase(cplx z, double phi) const {
  const auto q = ratio(z);
  if (!q) return std::nullopt;
  const cplx rot = k_ * std::polar(1.0, phi);
  return ((1.0 + rot) * *q - rot).real() - alpha_;
}

std::optional<double> pointwise_condition(const HarmonicPoly& f, const ParamSet& p, cplx z, double guard_eps) {
  return ConditionEvaluator(f, p, guard_eps).value(z);
}

ConditionScan sampled_condition_min(const HarmonicPoly& f, const ParamSet& p, const GridSpec& g) {
  g.validate();
  const ConditionEvaluator cond(f, p, g.guard_eps);
  ConditionScan scan{std::numeric_limits<double>::infinity(), cplx{}, 0, 0};
  for (std::size_t i = 0; i < g.radii.size(); ++i) {
    for (int j = 0; j < g.angles; ++j) {
      const cplx z = g.point(i, j);
      const auto v = cond.value(z);
      if (!v) {
        ++scan.skipped_points;
        continue;
      }
      ++scan.evaluated_points;
      if (*v < scan.min_value) {
        scan.min_value = *v;
        scan.argmin_z = z;
      }
    }
  }
  if (scan.evaluated_points == 0) {
    throw std::runtime_error("sampled_condition_min: every grid point hit the guard");
  }
  return scan;
}

double sense_preserving_margin(const HarmonicPoly& f, const GridSpec& g) {
  g.validate();
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < g.radii.size(); ++i) {
    for (int j = 0; j < g.angles; ++j) {
      const auto d = eval_derivatives(f, g.point(i, j));
      margin = std::min(margin, std::abs(d.hprime) - std::abs(d.gprime));
    }
  }
  return margin;
}

UnivalenceResult univalence_desk_check(const HarmonicPoly& f, const GridSpec& g) {
  g.validate();
  if (g.size() > kMaxUnivalencePoints) {
    throw std::invalid_argument("univalence_desk_check: grid exceeds 4096 points");
  }
  const auto zs = g.points();
  std::vector<cplx> ws(zs.size());
  std::transform(zs.begin(), zs.end(), ws.begin(), [&](cplx z) { return eval(f, z); });

  // Compare squared ratios; the square root is taken once at the end.
  double min_ratio2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < zs.size(); ++i) {
    for (std::size_t j = i + 1; j < zs.size(); ++j) {
      const double dz2 = std::norm(zs[i] - zs[j]);
      if (dz2 == 0.0) continue;
      min_ratio2 = std::min(min_ratio2, std::norm(ws[i] - ws[j]) / dz2);
    }
  }
  const double c = std::sqrt(min_ratio2);
  return {c > kUnivalenceFloor, c};
}

std::vector<ProbeSample> necessity_probe(const TCoefficients& t, const ParamSet& p,
                                         std::span<const double> r_sequence, double guard_eps) {
  const ConditionEvaluator cond(to_poly(t), p, guard_eps);
  std::vector<ProbeSample> out;
  out.reserve(r_sequence.size());
  for (double r : r_sequence) {
    if (!(r >= 0.0 && r < 1.0)) throw std::invalid_argument("necessity_probe: r must lie in [0, 1)");
    out.push_back({r, cond.value_at_phase(cplx(r, 0.0), 0.0)});
  }
  return out;
}

DistortionCheck distortion_check(const TCoefficients& t, const ParamSet& p, const GridSpec& g) {
  g.validate();
  const DistortionEnvelope env(p, t.bmag(1));
  const auto f = to_poly(t);
  DistortionCheck out{true, std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), {}};
  for (std::size_t i = 0; i < g.radii.size(); ++i) {
    const auto bounds = distortion_bounds(env, g.radii[i]);
    double max_abs = 0.0;
    for (int j = 0; j < g.angles; ++j) {
      const double m = std::abs(eval(f, g.point(i, j)));
      max_abs = std::max(max_abs, m);
      out.lower_slack = std::min(out.lower_slack, m - bounds.lower);
      out.upper_slack = std::min(out.upper_slack, bounds.upper - m);
    }
    out.max_abs_per_radius.push_back(max_abs);
  }
  out.ok = out.lower_slack >= -kDistortionSlack && out.upper_slack >= -kDistortionSlack;
  return out;
}

VerificationReport verify(const HarmonicPoly& f, const ParamSet& p, const GridSpec& g) {
  const auto scan = sampled_condition_min(f, p, g);
  const double margin = sense_preserving_margin(f, g);
  const auto uni = univalence_desk_check(f, g);
  VerificationReport rep{scan.min_value, scan.argmin_z,        margin, uni.univalent, uni.constant,
                         scan.evaluated_points, scan.skipped_points, false};
  rep.pass = rep.min_condition_value >= -g.tol && rep.min_jacobian_margin > 0.0 && rep.univalent_ok;
  return rep;
}

void write_condition_csv(std::ostream& out, const HarmonicPoly& f, const ParamSet& p, const GridSpec& g) {
  g.validate();
  const ConditionEvaluator cond(f, p, g.guard_eps);
  const auto precision = out.precision(17);
  out << "r,theta,condition_value\n";
  for (std::size_t i = 0; i < g.radii.size(); ++i) {
    for (int j = 0; j < g.angles; ++j) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(g.angles);
      out << g.radii[i] << ',' << theta << ',';
      if (const auto v = cond.value(g.point(i, j))) out << *v;
      out << '\n';
    }
  }
  out.precision(precision);
}

}  // namespace harmclass
