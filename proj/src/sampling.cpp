#include "harmclass/sampling.hpp"

#include <algorithm>
#include <stdexcept>

namespace harmclass {

ExtremeDecomposition random_decomposition(const ParamSet& p, std::size_t degree, Rng& rng,
                                          const MemberSampling& opts) {
  if (degree == 0) throw std::invalid_argument("random_decomposition: degree must be >= 1");
  std::exponential_distribution<double> draw(1.0);
  std::bernoulli_distribution drop(opts.sparsity);
  std::bernoulli_distribution on_boundary(opts.boundary_probability);
  std::uniform_real_distribution<double> fill(0.0, 1.0);

  ExtremeDecomposition d{std::vector<double>(degree, 0.0), std::vector<double>(degree, 0.0)};
  double total = 0.0;
  for (std::size_t i = 1; i < degree; ++i) {
    const double w = draw(rng);
    if (!drop(rng)) d.x[i] = w;
    total += d.x[i];
  }
  for (std::size_t i = 0; i < degree; ++i) {
    const double w = draw(rng);
    if (!drop(rng)) d.y[i] = w;
    total += d.y[i];
  }
  const double mass = on_boundary(rng) ? 1.0 : fill(rng);
  if (total > 0.0) {
    for (auto& w : d.x) w *= mass / total;
    for (auto& w : d.y) w *= mass / total;
  }
  // |b_1| = y_1 / eta(1) must stay below 1.
  const double y1_cap = 0.99 * eta(1, p);
  if (d.y[0] > y1_cap) d.y[0] = y1_cap;

  double used = 0.0;
  for (std::size_t i = 1; i < degree; ++i) used += d.x[i];
  for (double w : d.y) used += w;
  d.x[0] = std::max(0.0, 1.0 - used);
  return d;
}

TCoefficients random_member(const ParamSet& p, Rng& rng, const MemberSampling& opts) {
  if (opts.min_degree < 1 || opts.max_degree < opts.min_degree) {
    throw std::invalid_argument("random_member: bad degree range");
  }
  std::uniform_int_distribution<std::size_t> pick(opts.min_degree, opts.max_degree);
  return reconstruct(random_decomposition(p, pick(rng), rng, opts), p);
}

TCoefficients inflate_to_budget(const TCoefficients& t, const ParamSet& p, double target) {
  const double base = budget(t, p);
  const double tail = base - 1.0;  // the a_1 term contributes exactly 1
  if (!(tail > 0.0)) throw std::invalid_argument("inflate_to_budget: no tail to scale");
  const double scale = (target - 1.0) / tail;
  std::vector<double> amag(t.amags().begin(), t.amags().end());
  std::vector<double> bmag(t.bmags().begin(), t.bmags().end());
  for (std::size_t i = 1; i < amag.size(); ++i) amag[i] *= scale;
  for (auto& b : bmag) b *= scale;
  if (!(bmag[0] < 1.0)) throw std::invalid_argument("inflate_to_budget: bmag_1 would reach 1");
  return TCoefficients(std::move(amag), std::move(bmag), t.u_parity());
}

TCoefficients random_violator(const ParamSet& p, Rng& rng, double min_margin, double max_margin,
                              const MemberSampling& opts) {
  if (!(min_margin > 0.0 && max_margin >= min_margin)) {
    throw std::invalid_argument("random_violator: bad margin range");
  }
  std::uniform_real_distribution<double> margin(min_margin, max_margin);
  std::uniform_int_distribution<std::size_t> pick(std::max<std::size_t>(opts.min_degree, 2), opts.max_degree);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const auto d = random_decomposition(p, pick(rng), rng, opts);
    const auto t = reconstruct(d, p);
    if (!(budget(t, p) > 1.0 + 1e-3)) continue;
    try {
      return inflate_to_budget(t, p, 2.0 + margin(rng));
    } catch (const std::invalid_argument&) {
      continue;
    }
  }
  throw std::runtime_error("random_violator: could not draw a violator");
}

}  // namespace harmclass
