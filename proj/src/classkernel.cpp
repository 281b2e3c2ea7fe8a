#include "harmclass/classkernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "harmclass/oboudi.hpp"

namespace harmclass {

ParamSet::ParamSet(int u, int v, double k, double alpha, double lambda)
    : u_(u), v_(v), k_(k), alpha_(alpha), lambda_(lambda) {
  if (u_ < 1 || u_ > kMaxOperatorOrder) throw std::invalid_argument("ParamSet: u must lie in [1, 64]");
  if (v_ < 0) throw std::invalid_argument("ParamSet: v must be >= 0");
  if (!(u_ > v_)) throw std::invalid_argument("ParamSet: u must exceed v");
  if (!(k_ >= 0.0) || !std::isfinite(k_)) throw std::invalid_argument("ParamSet: k must be finite and >= 0");
  if (!(alpha_ >= 0.0 && alpha_ < 1.0)) throw std::invalid_argument("ParamSet: alpha must lie in [0, 1)");
  if (!(lambda_ >= 0.0) || !std::isfinite(lambda_)) {
    throw std::invalid_argument("ParamSet: lambda must be finite and >= 0");
  }
}

double xi(std::size_t n, const ParamSet& p) {
  const double bu = weight(n, p.u(), p.lambda());
  const double bv = weight(n, p.v(), p.lambda());
  return bv + (bu - bv) * (1.0 + p.k()) / (1.0 - p.alpha());
}

double eta(std::size_t n, const ParamSet& p) {
  const double s = p.parity_sign();
  const double bu = weight(n, p.u(), p.lambda());
  const double bv = weight(n, p.v(), p.lambda());
  return s * bv + (bu - s * bv) * (1.0 + p.k()) / (1.0 - p.alpha());
}

double budget(std::span<const double> amag, std::span<const double> bmag, const ParamSet& p) {
  if (amag.size() != bmag.size()) throw std::invalid_argument("budget: magnitude arrays differ in length");
  double total = 0.0;
  for (std::size_t i = 0; i < amag.size(); ++i) {
    total += xi(i + 1, p) * amag[i] + eta(i + 1, p) * bmag[i];
  }
  return total;
}

double budget(const TCoefficients& t, const ParamSet& p) { return budget(t.amags(), t.bmags(), p); }

double budget(const HarmonicPoly& f, const ParamSet& p) {
  std::vector<double> am(f.degree()), bm(f.degree());
  std::transform(f.analytic().begin(), f.analytic().end(), am.begin(), [](cplx c) { return std::abs(c); });
  std::transform(f.coanalytic().begin(), f.coanalytic().end(), bm.begin(), [](cplx c) { return std::abs(c); });
  return budget(am, bm, p);
}

bool is_member_sufficient(const TCoefficients& t, const ParamSet& p) {
  return budget(t, p) <= kBudgetLimit + kMembershipSlack;
}

bool is_member_sufficient(const HarmonicPoly& f, const ParamSet& p) {
  if (std::abs(std::abs(f.a(1)) - 1.0) > kMembershipSlack || !f.class_eligible()) return false;
  return budget(f, p) <= kBudgetLimit + kMembershipSlack;
}

bool is_member_iff_TH(const TCoefficients& t, const ParamSet& p) { return is_member_sufficient(t, p); }

namespace {

void check_convex_weights(std::span<const double> x, std::span<const double> y, std::size_t degree,
                          const char* op) {
  if (x.size() != degree || y.size() != degree) {
    throw std::invalid_argument(std::string(op) + ": weight arrays must have length equal to the degree");
  }
  auto bad = [](double w) { return !(w >= 0.0) || !std::isfinite(w); };
  if (std::any_of(x.begin(), x.end(), bad) || std::any_of(y.begin(), y.end(), bad)) {
    throw std::invalid_argument(std::string(op) + ": weights must be finite and nonnegative");
  }
}

}  // namespace

HarmonicPoly sharp_function(const ParamSet& p, std::span<const double> x, std::span<const double> y,
                            std::size_t degree) {
  if (degree == 0) throw std::invalid_argument("sharp_function: degree must be >= 1");
  check_convex_weights(x, y, degree, "sharp_function");
  if (x[0] != 0.0) throw std::invalid_argument("sharp_function: x_1 is not a free weight");
  const double total = std::accumulate(x.begin(), x.end(), 0.0) + std::accumulate(y.begin(), y.end(), 0.0);
  if (std::abs(total - 1.0) > kWeightSumTolerance) {
    throw std::invalid_argument("sharp_function: weights must sum to 1");
  }
  std::vector<cplx> a(degree), b(degree);
  a[0] = 1.0;
  for (std::size_t i = 1; i < degree; ++i) a[i] = x[i] / xi(i + 1, p);
  for (std::size_t i = 0; i < degree; ++i) b[i] = y[i] / eta(i + 1, p);
  return HarmonicPoly(std::move(a), std::move(b));
}

HarmonicPoly extreme_point_P(std::size_t n, const ParamSet& p) {
  if (n < 1) throw std::invalid_argument("extreme_point_P: n must be >= 1");
  auto f = HarmonicPoly::identity(n);
  if (n == 1) return f;
  std::vector<cplx> a(f.analytic().begin(), f.analytic().end());
  a[n - 1] = -1.0 / xi(n, p);
  return HarmonicPoly(std::move(a), std::vector<cplx>(n));
}

ExtremePoint extreme_point_Q(std::size_t n, const ParamSet& p) {
  if (n < 1) throw std::invalid_argument("extreme_point_Q: n must be >= 1");
  const double sign = (p.u() - 1) % 2 == 0 ? 1.0 : -1.0;
  std::vector<cplx> a(n), b(n);
  a[0] = 1.0;
  b[n - 1] = sign / eta(n, p);
  HarmonicPoly f(std::move(a), std::move(b));
  const bool eligible = f.class_eligible();
  return {std::move(f), eligible};
}

ExtremeDecomposition decompose(const TCoefficients& t, const ParamSet& p) {
  const std::size_t n = t.degree();
  ExtremeDecomposition d{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  double rest = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    d.x[i] = xi(i + 1, p) * t.amags()[i];
    rest += d.x[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    d.y[i] = eta(i + 1, p) * t.bmags()[i];
    rest += d.y[i];
  }
  d.x[0] = 1.0 - rest;
  if (d.x[0] < -kMembershipSlack) throw std::invalid_argument("decompose: coefficients are not a class member");
  d.x[0] = std::max(d.x[0], 0.0);
  return d;
}

TCoefficients reconstruct(const ExtremeDecomposition& d, const ParamSet& p) {
  const std::size_t n = d.x.size();
  if (n == 0 || d.y.size() != n) throw std::invalid_argument("reconstruct: malformed decomposition");
  std::vector<double> amag(n, 0.0), bmag(n, 0.0);
  amag[0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) amag[i] = d.x[i] / xi(i + 1, p);
  for (std::size_t i = 0; i < n; ++i) bmag[i] = d.y[i] / eta(i + 1, p);
  return TCoefficients(std::move(amag), std::move(bmag), p.u());
}

HarmonicPoly combine_extreme_points(const ExtremeDecomposition& d, const ParamSet& p) {
  const std::size_t n = d.x.size();
  if (n == 0 || d.y.size() != n) throw std::invalid_argument("combine_extreme_points: malformed decomposition");
  std::vector<HarmonicPoly> points;
  std::vector<double> weights;
  for (std::size_t i = 0; i < n; ++i) {
    points.push_back(extreme_point_P(i + 1, p).padded(n));
    weights.push_back(d.x[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    points.push_back(extreme_point_Q(i + 1, p).f.padded(n));
    weights.push_back(d.y[i]);
  }
  return convex_combine(points, weights);
}

DistortionEnvelope::DistortionEnvelope(const ParamSet& p, double b1_in) : b1(b1_in) {
  if (!(b1 >= 0.0 && b1 < 1.0)) throw std::invalid_argument("distortion: |b_1| must lie in [0, 1)");
  const double grow = 1.0 + p.lambda();
  const double denom = std::pow(grow, p.u()) * (1.0 + p.k()) - std::pow(grow, p.v()) * (p.k() + p.alpha());
  if (!(denom > 0.0)) throw std::logic_error("distortion: nonpositive denominator");
  sigma = (1.0 - p.alpha()) / denom;
  tau = ((1.0 + p.k()) - p.parity_sign() * (p.k() + p.alpha())) / denom;
}

DistortionBounds distortion_bounds(const DistortionEnvelope& env, double r) {
  if (!(r >= 0.0 && r < 1.0)) throw std::invalid_argument("distortion: r must lie in [0, 1)");
  const double quad = env.curvature() * r * r;
  return {std::max(0.0, (1.0 - env.b1) * r - quad), (1.0 + env.b1) * r + quad};
}

DistortionBounds distortion_bounds(const ParamSet& p, double b1, double r) {
  return distortion_bounds(DistortionEnvelope(p, b1), r);
}

std::string_view preset_name(Preset preset) {
  switch (preset) {
    case Preset::SH_alpha: return "SH_alpha";
    case Preset::KH_alpha: return "KH_alpha";
    case Preset::GH_alpha: return "GH_alpha";
    case Preset::RSH_v_alpha: return "RSH_v_alpha";
    case Preset::kUSH_v1: return "kUSH_v1";
    case Preset::kHCV: return "kHCV";
    case Preset::kUSH: return "kUSH";
  }
  throw std::logic_error("preset_name: unhandled preset");
}

Preset parse_preset(std::string_view name) {
  for (Preset p : kAllPresets) {
    if (preset_name(p) == name) return p;
  }
  throw std::invalid_argument("unknown preset: " + std::string(name));
}

bool preset_uses_v(Preset preset) { return preset == Preset::RSH_v_alpha || preset == Preset::kUSH_v1; }

bool preset_uses_k(Preset preset) {
  return preset == Preset::kUSH_v1 || preset == Preset::kHCV || preset == Preset::kUSH;
}

ParamSet preset(Preset preset, const PresetArgs& args) {
  if (args.v && !preset_uses_v(preset)) {
    throw std::invalid_argument("preset " + std::string(preset_name(preset)) + " fixes v");
  }
  if (args.k && !preset_uses_k(preset)) {
    throw std::invalid_argument("preset " + std::string(preset_name(preset)) + " fixes k");
  }
  const int v = args.v.value_or(0);
  const double k = args.k.value_or(0.0);
  switch (preset) {
    case Preset::SH_alpha: return ParamSet(1, 0, 0.0, args.alpha, 1.0);
    case Preset::KH_alpha: return ParamSet(2, 1, 0.0, args.alpha, 1.0);
    case Preset::GH_alpha: return ParamSet(1, 0, 1.0, args.alpha, 1.0);
    case Preset::RSH_v_alpha: return ParamSet(v + 1, v, 1.0, args.alpha, 1.0);
    case Preset::kUSH_v1: return ParamSet(v + 1, v, k, args.alpha, 1.0);
    case Preset::kHCV: return ParamSet(2, 1, k, args.alpha, 1.0);
    case Preset::kUSH: return ParamSet(1, 0, k, args.alpha, 1.0);
  }
  throw std::logic_error("preset: unhandled preset");
}

std::pair<double, double> corollary_coefficients(Preset preset, std::size_t n_index, double alpha, int v,
                                                 double k) {
  if (n_index < 1) throw std::invalid_argument("corollary_coefficients: n must be >= 1");
  if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("corollary_coefficients: alpha must lie in [0, 1)");
  const double n = static_cast<double>(n_index);
  const double scale = 1.0 - alpha;
  const double nv = std::pow(n, v);
  switch (preset) {
    case Preset::SH_alpha: return {(n - alpha) / scale, (n + alpha) / scale};
    case Preset::KH_alpha: return {n * (n - alpha) / scale, n * (n + alpha) / scale};
    case Preset::GH_alpha: return {(2 * n - 1 - alpha) / scale, (2 * n + 1 + alpha) / scale};
    case Preset::RSH_v_alpha: return {nv * (2 * n - 1 - alpha) / scale, nv * (2 * n + 1 + alpha) / scale};
    case Preset::kUSH_v1:
      return {nv * (n + n * k - k - alpha) / scale, nv * (n + n * k + k + alpha) / scale};
    case Preset::kHCV: return {n * (n + n * k - k - alpha) / scale, n * (n + n * k + k + alpha) / scale};
    case Preset::kUSH: return {(n + n * k - k - alpha) / scale, (n + n * k + k + alpha) / scale};
  }
  throw std::logic_error("corollary_coefficients: unhandled preset");
}

}  // namespace harmclass
