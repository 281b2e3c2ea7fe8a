#include "harmclass/oboudi.hpp"

#include <cmath>
#include <stdexcept>

namespace harmclass {

void validate(const OperatorParams& params) {
  if (params.u < 0 || params.u > kMaxOperatorOrder) {
    throw std::invalid_argument("operator order u must lie in [0, 64]");
  }
  if (!(params.lambda >= 0.0) || !std::isfinite(params.lambda)) {
    throw std::invalid_argument("operator parameter lambda must be finite and >= 0");
  }
}

double weight(std::size_t n, int u, double lambda) {
  if (n < 1) throw std::invalid_argument("weight: n must be >= 1");
  validate({u, lambda});
  const double base = 1.0 + static_cast<double>(n - 1) * lambda;
  return std::pow(base, u);
}

std::vector<cplx> apply_analytic_closed(std::span<const cplx> coeffs, const OperatorParams& params) {
  validate(params);
  std::vector<cplx> out(coeffs.begin(), coeffs.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= weight(i + 1, params.u, params.lambda);
  return out;
}

std::vector<cplx> apply_analytic_recursive(std::span<const cplx> coeffs, const OperatorParams& params) {
  validate(params);
  std::vector<cplx> out(coeffs.begin(), coeffs.end());
  for (int step = 0; step < params.u; ++step) {
    for (std::size_t i = 0; i < out.size(); ++i) {
      const double n = static_cast<double>(i + 1);
      out[i] = (1.0 - params.lambda) * out[i] + params.lambda * n * out[i];
    }
  }
  return out;
}

HarmonicPoly apply_harmonic(const HarmonicPoly& f, const OperatorParams& params) {
  auto a = apply_analytic_closed(f.analytic(), params);
  auto b = apply_analytic_closed(f.coanalytic(), params);
  if (params.u % 2 != 0) {
    for (auto& c : b) c = -c;
  }
  return HarmonicPoly(std::move(a), std::move(b));
}

}  // namespace harmclass
