#pragma once

#include <cstdint>
#include <random>

#include "harmclass/classkernel.hpp"

namespace harmclass {

using Rng = std::mt19937_64;

/// Options for drawing random members of the negative-coefficient subclass.
struct MemberSampling {
  std::size_t min_degree = 2;
  std::size_t max_degree = 10;
  /// Probability that a drawn member sits exactly on the budget boundary.
  double boundary_probability = 0.25;
  /// Probability that any single extreme-point weight is zero.
  double sparsity = 0.3;
};

/// Random convex weights over the extreme points (x_1 absorbs the slack).
/// The returned decomposition always has y_1 < eta(1), so reconstruct()
/// yields bmag_1 < 1.
ExtremeDecomposition random_decomposition(const ParamSet& p, std::size_t degree, Rng& rng,
                                          const MemberSampling& opts = {});

/// Random member t with budget(t, p) <= 2 and t.u_parity() == p.u().
TCoefficients random_member(const ParamSet& p, Rng& rng, const MemberSampling& opts = {});

/// Scales every coefficient except a_1 so that budget(result, p) == target.
/// Throws std::invalid_argument when t has no tail or bmag_1 would reach 1.
TCoefficients inflate_to_budget(const TCoefficients& t, const ParamSet& p, double target);

/// Random non-member whose budget lies in [2 + min_margin, 2 + max_margin].
TCoefficients random_violator(const ParamSet& p, Rng& rng, double min_margin, double max_margin,
                              const MemberSampling& opts = {});

}  // namespace harmclass
