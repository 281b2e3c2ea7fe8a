#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace harmclass {

using cplx = std::complex<double>;

/// Truncated harmonic polynomial f = h + conj(g) on the unit disk,
///   h(z) = sum_{n=1..N} a_n z^n,  g(z) = sum_{n=1..N} b_n z^n.
///
/// Coefficients are addressed 1-based (a(1) is the coefficient of z); the
/// spans returned by analytic()/coanalytic() are 0-based storage.
class HarmonicPoly {
 public:
  /// Both arrays must be non-empty and of equal length.
  HarmonicPoly(std::vector<cplx> a, std::vector<cplx> b);

  /// f(z) = z with the given truncation order.
  static HarmonicPoly identity(std::size_t degree = 1);

  std::size_t degree() const noexcept { return a_.size(); }

  cplx a(std::size_t n) const;
  cplx b(std::size_t n) const;

  std::span<const cplx> analytic() const noexcept { return a_; }
  std::span<const cplx> coanalytic() const noexcept { return b_; }

  /// a_1 == 1 exactly.
  bool normalized() const noexcept { return a_.front() == cplx(1.0, 0.0); }
  /// |b_1| < 1.
  bool class_eligible() const noexcept { return std::abs(b_.front()) < 1.0; }

  /// Same function with a zero tail up to `degree` (never truncates).
  HarmonicPoly padded(std::size_t degree) const;

  friend bool operator==(const HarmonicPoly&, const HarmonicPoly&) = default;

 private:
  std::vector<cplx> a_;
  std::vector<cplx> b_;
};

/// Coefficient magnitudes of a member of the negative-coefficient subclass:
///   h(z) = z - sum_{n>=2} amag_n z^n,  g(z) = (-1)^{u-1} sum_{n>=1} bmag_n z^n.
class TCoefficients {
 public:
  /// Requires amag_1 == 1, bmag_1 < 1, all entries finite and >= 0, equal
  /// lengths, u_parity >= 1.
  TCoefficients(std::vector<double> amag, std::vector<double> bmag, int u_parity);

  static TCoefficients identity(std::size_t degree, int u_parity);

  std::size_t degree() const noexcept { return amag_.size(); }
  int u_parity() const noexcept { return u_parity_; }

  double amag(std::size_t n) const;
  double bmag(std::size_t n) const;
  std::span<const double> amags() const noexcept { return amag_; }
  std::span<const double> bmags() const noexcept { return bmag_; }

  friend bool operator==(const TCoefficients&, const TCoefficients&) = default;

 private:
  std::vector<double> amag_;
  std::vector<double> bmag_;
  int u_parity_;
};

/// f(z) = h(z) + conj(g(z)), Horner evaluation of both parts. Requires |z| < 1.
cplx eval(const HarmonicPoly& f, cplx z);

struct Derivatives {
  cplx hprime;
  cplx gprime;
};

/// h'(z) and g'(z). Requires |z| < 1.
Derivatives eval_derivatives(const HarmonicPoly& f, cplx z);

/// Signed coefficient form of a T-class member: a_n = -amag_n (n >= 2),
/// b_n = (-1)^{u-1} bmag_n.
HarmonicPoly to_poly(const TCoefficients& t);

/// Coefficientwise (Hadamard) product of both parts; the shorter operand is
/// zero-padded.
HarmonicPoly hadamard_convolve(const HarmonicPoly& f, const HarmonicPoly& g);

/// Weighted coefficientwise sum. Weights must be nonnegative and sum to 1
/// within 1e-12.
HarmonicPoly convex_combine(std::span<const HarmonicPoly> fs, std::span<const double> ts);

/// Real-linear combination alpha*f + beta*g (zero-padded).
HarmonicPoly linear_combine(double alpha, const HarmonicPoly& f, double beta, const HarmonicPoly& g);

inline constexpr double kWeightSumTolerance = 1e-12;

}  // namespace harmclass
