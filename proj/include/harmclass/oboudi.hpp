#pragma once

#include <span>
#include <vector>

#include "harmclass/series.hpp"

namespace harmclass {

// Al-Oboudi differential operator D^u with parameter lambda:
//   D^0 h = h,  D^1 h = (1 - lambda) h + lambda z h',  D^u = D^1 (D^{u-1}).
// On coefficients it multiplies c_n by (1 + (n-1) lambda)^u.

inline constexpr int kMaxOperatorOrder = 64;

struct OperatorParams {
  int u = 0;
  double lambda = 0.0;
};

/// Throws std::invalid_argument unless 0 <= u <= kMaxOperatorOrder and lambda >= 0.
void validate(const OperatorParams& params);

/// (1 + (n-1) lambda)^u.
double weight(std::size_t n, int u, double lambda);

/// Coefficient n (1-based, storage index n-1) scaled by weight(n, u, lambda).
std::vector<cplx> apply_analytic_closed(std::span<const cplx> coeffs, const OperatorParams& params);

/// u-fold application of the one-step rule c_n <- (1 - lambda) c_n + lambda n c_n.
std::vector<cplx> apply_analytic_recursive(std::span<const cplx> coeffs, const OperatorParams& params);

/// D^u f = D^u h + conj((-1)^u D^u g); the (-1)^u is folded into the stored
/// co-analytic coefficients.
HarmonicPoly apply_harmonic(const HarmonicPoly& f, const OperatorParams& params);

}  // namespace harmclass
