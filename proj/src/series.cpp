#include "harmclass/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace harmclass {

namespace {

void require_in_disk(cplx z, const char* op) {
  if (!(std::abs(z) < 1.0)) {
    throw std::domain_error(std::string(op) + ": |z| must be < 1");
  }
}

// sum_{n=1..N} c_n z^n
cplx horner(std::span<const cplx> c, cplx z) {
  cplx acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc * z;
}

// sum_{n=1..N} n c_n z^{n-1}
cplx horner_derivative(std::span<const cplx> c, cplx z) {
  cplx acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = acc * z + static_cast<double>(i + 1) * c[i];
  }
  return acc;
}

std::vector<cplx> pad(std::span<const cplx> c, std::size_t n) {
  std::vector<cplx> out(c.begin(), c.end());
  out.resize(std::max(n, c.size()), cplx{});
  return out;
}

}  // namespace

HarmonicPoly::HarmonicPoly(std::vector<cplx> a, std::vector<cplx> b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_.empty() || a_.size() != b_.size()) {
    throw std::invalid_argument("HarmonicPoly: coefficient arrays must be non-empty and of equal length");
  }
}

HarmonicPoly HarmonicPoly::identity(std::size_t degree) {
  if (degree == 0) throw std::invalid_argument("HarmonicPoly: degree must be >= 1");
  std::vector<cplx> a(degree), b(degree);
  a[0] = 1.0;
  return HarmonicPoly(std::move(a), std::move(b));
}

cplx HarmonicPoly::a(std::size_t n) const {
  if (n < 1 || n > a_.size()) throw std::out_of_range("HarmonicPoly::a: index out of range");
  return a_[n - 1];
}

cplx HarmonicPoly::b(std::size_t n) const {
  if (n < 1 || n > b_.size()) throw std::out_of_range("HarmonicPoly::b: index out of range");
  return b_[n - 1];
}

HarmonicPoly HarmonicPoly::padded(std::size_t degree) const {
  return HarmonicPoly(pad(a_, degree), pad(b_, degree));
}

TCoefficients::TCoefficients(std::vector<double> amag, std::vector<double> bmag, int u_parity)
    : amag_(std::move(amag)), bmag_(std::move(bmag)), u_parity_(u_parity) {
  if (amag_.empty() || amag_.size() != bmag_.size()) {
    throw std::invalid_argument("TCoefficients: magnitude arrays must be non-empty and of equal length");
  }
  if (u_parity_ < 1) throw std::invalid_argument("TCoefficients: u must be >= 1");
  if (amag_.front() != 1.0) throw std::invalid_argument("TCoefficients: amag_1 must equal 1");
  auto bad = [](double x) { return !std::isfinite(x) || x < 0.0; };
  if (std::any_of(amag_.begin(), amag_.end(), bad) || std::any_of(bmag_.begin(), bmag_.end(), bad)) {
    throw std::invalid_argument("TCoefficients: magnitudes must be finite and nonnegative");
  }
  if (!(bmag_.front() < 1.0)) throw std::invalid_argument("TCoefficients: bmag_1 must be < 1");
}

TCoefficients TCoefficients::identity(std::size_t degree, int u_parity) {
  if (degree == 0) throw std::invalid_argument("TCoefficients: degree must be >= 1");
  std::vector<double> a(degree, 0.0), b(degree, 0.0);
  a[0] = 1.0;
  return TCoefficients(std::move(a), std::move(b), u_parity);
}

double TCoefficients::amag(std::size_t n) const {
  if (n < 1 || n > amag_.size()) throw std::out_of_range("TCoefficients::amag: index out of range");
  return amag_[n - 1];
}

double TCoefficients::bmag(std::size_t n) const {
  if (n < 1 || n > bmag_.size()) throw std::out_of_range("TCoefficients::bmag: index out of range");
  return bmag_[n - 1];
}

cplx eval(const HarmonicPoly& f, cplx z) {
  require_in_disk(z, "eval");
  return horner(f.analytic(), z) + std::conj(horner(f.coanalytic(), z));
}

Derivatives eval_derivatives(const HarmonicPoly& f, cplx z) {
  require_in_disk(z, "eval_derivatives");
  return {horner_derivative(f.analytic(), z), horner_derivative(f.coanalytic(), z)};
}

HarmonicPoly to_poly(const TCoefficients& t) {
  const double sign = (t.u_parity() - 1) % 2 == 0 ? 1.0 : -1.0;
  std::vector<cplx> a(t.degree()), b(t.degree());
  a[0] = 1.0;
  for (std::size_t i = 1; i < t.degree(); ++i) a[i] = -t.amags()[i];
  for (std::size_t i = 0; i < t.degree(); ++i) b[i] = sign * t.bmags()[i];
  return HarmonicPoly(std::move(a), std::move(b));
}

HarmonicPoly hadamard_convolve(const HarmonicPoly& f, const HarmonicPoly& g) {
  const std::size_t n = std::max(f.degree(), g.degree());
  auto fa = pad(f.analytic(), n), fb = pad(f.coanalytic(), n);
  const auto ga = pad(g.analytic(), n), gb = pad(g.coanalytic(), n);
  for (std::size_t i = 0; i < n; ++i) {
    fa[i] *= ga[i];
    fb[i] *= gb[i];
  }
  return HarmonicPoly(std::move(fa), std::move(fb));
}

HarmonicPoly convex_combine(std::span<const HarmonicPoly> fs, std::span<const double> ts) {
  if (fs.empty() || fs.size() != ts.size()) {
    throw std::invalid_argument("convex_combine: need one weight per function");
  }
  double total = 0.0;
  for (double t : ts) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("convex_combine: weights must lie in [0,1]");
    total += t;
  }
  if (std::abs(total - 1.0) > kWeightSumTolerance) {
    throw std::invalid_argument("convex_combine: weights must sum to 1");
  }
  std::size_t n = 0;
  for (const auto& f : fs) n = std::max(n, f.degree());
  std::vector<cplx> a(n), b(n);
  for (std::size_t j = 0; j < fs.size(); ++j) {
    const auto fa = fs[j].analytic();
    const auto fb = fs[j].coanalytic();
    for (std::size_t i = 0; i < fa.size(); ++i) {
      a[i] += ts[j] * fa[i];
      b[i] += ts[j] * fb[i];
    }
  }
  return HarmonicPoly(std::move(a), std::move(b));
}

HarmonicPoly linear_combine(double alpha, const HarmonicPoly& f, double beta, const HarmonicPoly& g) {
  const std::size_t n = std::max(f.degree(), g.degree());
  auto a = pad(f.analytic(), n), b = pad(f.coanalytic(), n);
  const auto ga = pad(g.analytic(), n), gb = pad(g.coanalytic(), n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = alpha * a[i] + beta * ga[i];
    b[i] = alpha * b[i] + beta * gb[i];
  }
  return HarmonicPoly(std::move(a), std::move(b));
}

}  // namespace harmclass
