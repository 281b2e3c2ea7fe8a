#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "harmclass/series.hpp"

namespace harmclass {

/// Parameters (u, v, k, alpha, lambda) of the class k-USH(u, v, alpha, lambda).
///
/// Construction enforces u >= 1, 0 <= v < u, k >= 0, 0 <= alpha < 1,
/// lambda >= 0 and u <= 64; an invalid combination throws
/// std::invalid_argument, so every live ParamSet is valid.
class ParamSet {
 public:
  ParamSet(int u, int v, double k, double alpha, double lambda);

  int u() const noexcept { return u_; }
  int v() const noexcept { return v_; }
  double k() const noexcept { return k_; }
  double alpha() const noexcept { return alpha_; }
  double lambda() const noexcept { return lambda_; }

  /// (-1)^{u-v}
  double parity_sign() const noexcept { return (u_ - v_) % 2 == 0 ? 1.0 : -1.0; }

  friend bool operator==(const ParamSet&, const ParamSet&) = default;

 private:
  int u_;
  int v_;
  double k_;
  double alpha_;
  double lambda_;
};

/// Weight of |a_n| in the coefficient budget:
///   B^v + (B^u - B^v)(1 + k)/(1 - alpha),  B = 1 + (n-1) lambda.
double xi(std::size_t n, const ParamSet& p);

/// Weight of |b_n|: s B^v + (B^u - s B^v)(1 + k)/(1 - alpha), s = (-1)^{u-v}.
double eta(std::size_t n, const ParamSet& p);

/// sum_n xi(n) amag_n + eta(n) bmag_n over explicit magnitude arrays
/// (index 0 is n = 1). Requires equal lengths.
double budget(std::span<const double> amag, std::span<const double> bmag, const ParamSet& p);
double budget(const TCoefficients& t, const ParamSet& p);
/// Budget of |a_n|, |b_n| for an arbitrary harmonic polynomial.
double budget(const HarmonicPoly& f, const ParamSet& p);

inline constexpr double kBudgetLimit = 2.0;
inline constexpr double kMembershipSlack = 1e-12;

/// Sufficient membership test: budget <= 2 + 1e-12. For a HarmonicPoly this
/// also requires a normalized, class-eligible function (a_1 = 1, |b_1| < 1).
bool is_member_sufficient(const TCoefficients& t, const ParamSet& p);
bool is_member_sufficient(const HarmonicPoly& f, const ParamSet& p);

/// Exact membership in the negative-coefficient subclass; same decision rule
/// as is_member_sufficient, but necessary as well as sufficient there.
bool is_member_iff_TH(const TCoefficients& t, const ParamSet& p);

/// Convex weights over the extreme points. Both arrays have length N and are
/// indexed by n - 1; x[0] carries x_1 (the weight of P_1(z) = z).
struct ExtremeDecomposition {
  std::vector<double> x;
  std::vector<double> y;
};

/// z + sum_{n>=2} x_n/xi(n) z^n + sum_{n>=1} y_n/eta(n) conj(z)^n.
/// `x` and `y` have length `degree` (index n-1); x[0] must be 0. Weights are
/// nonnegative and sum to 1 within 1e-12, otherwise std::invalid_argument.
HarmonicPoly sharp_function(const ParamSet& p, std::span<const double> x, std::span<const double> y,
                            std::size_t degree);

struct ExtremePoint {
  HarmonicPoly f;
  /// false when |b_1| >= 1 (only Q_1 with eta(1) <= 1 can hit this).
  bool class_eligible;
};

/// P_1 = z; P_n = z - z^n / xi(n) for n >= 2. Degree of the result is max(n, 1).
HarmonicPoly extreme_point_P(std::size_t n, const ParamSet& p);

/// Q_n = z + (-1)^{u-1} conj(z)^n / eta(n), n >= 1.
ExtremePoint extreme_point_Q(std::size_t n, const ParamSet& p);

/// x_n = xi(n) amag_n (n >= 2), y_n = eta(n) bmag_n, x_1 = 1 - sum x - sum y.
/// Throws std::invalid_argument for non-members.
ExtremeDecomposition decompose(const TCoefficients& t, const ParamSet& p);

/// Inverse of decompose: amag_n = x_n/xi(n), bmag_n = y_n/eta(n).
TCoefficients reconstruct(const ExtremeDecomposition& d, const ParamSet& p);

/// sum_n x_n P_n + y_n Q_n, assembled as a convex combination of extreme points.
HarmonicPoly combine_extreme_points(const ExtremeDecomposition& d, const ParamSet& p);

/// Constants of the distortion envelope; sigma = 1/xi(2) and tau = eta(1)/xi(2).
struct DistortionEnvelope {
  double sigma;
  double tau;
  double b1;

  DistortionEnvelope(const ParamSet& p, double b1);

  /// Quadratic coefficient sigma - tau * b1.
  double curvature() const noexcept { return sigma - tau * b1; }
};

struct DistortionBounds {
  double lower;
  double upper;
};

/// upper = (1 + b1) r + (sigma - tau b1) r^2,
/// lower = max(0, (1 - b1) r - (sigma - tau b1) r^2).
/// Requires 0 <= b1 < 1 and 0 <= r < 1.
DistortionBounds distortion_bounds(const ParamSet& p, double b1, double r);
DistortionBounds distortion_bounds(const DistortionEnvelope& env, double r);

// Named specializations with closed-form coefficient inequalities.

enum class Preset { SH_alpha, KH_alpha, GH_alpha, RSH_v_alpha, kUSH_v1, kHCV, kUSH };

inline constexpr Preset kAllPresets[] = {Preset::SH_alpha,    Preset::KH_alpha, Preset::GH_alpha,
                                         Preset::RSH_v_alpha, Preset::kUSH_v1,  Preset::kHCV,
                                         Preset::kUSH};

std::string_view preset_name(Preset preset);
/// Throws std::invalid_argument for an unknown name.
Preset parse_preset(std::string_view name);

/// True when the preset leaves v free (otherwise v is fixed by the preset).
bool preset_uses_v(Preset preset);
/// True when the preset leaves k free.
bool preset_uses_k(Preset preset);

/// Free parameters of a preset. Fields a preset fixes must stay unset.
struct PresetArgs {
  double alpha = 0.0;
  std::optional<int> v;
  std::optional<double> k;
};

/// ParamSet of a specialization. Free parameters default to v = 0, k = 0;
/// supplying a parameter the preset fixes throws std::invalid_argument.
ParamSet preset(Preset preset, const PresetArgs& args = {});

/// Literal closed forms of (xi(n), eta(n)) for `preset`, on the "<= 2"
/// scale (forms usually written against 2(1 - alpha) are divided by 1 - alpha).
/// Kept independent of xi/eta so the two can be cross-checked.
std::pair<double, double> corollary_coefficients(Preset preset, std::size_t n, double alpha, int v = 0,
                                                 double k = 0.0);

}  // namespace harmclass
