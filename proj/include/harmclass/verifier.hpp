#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "harmclass/classkernel.hpp"
#include "harmclass/series.hpp"

namespace harmclass {

/// Polar sampling plan {r e^{i theta}} over the open unit disk.
struct GridSpec {
  std::vector<double> radii;
  int angles = 128;
  /// Points with |D^v f(z)| <= guard_eps are skipped.
  double guard_eps = 1e-9;
  /// Slack allowed below zero for the class condition.
  double tol = 1e-6;

  /// radii {0.1, ..., 0.9, 0.95, 0.99}, 128 angles, guard 1e-9, tol 1e-6.
  static GridSpec default_grid();

  /// Throws std::invalid_argument unless every radius is in (0,1),
  /// angles >= 8, guard_eps > 0 and tol > 0.
  void validate() const;

  std::size_t size() const noexcept { return radii.size() * static_cast<std::size_t>(angles); }
  /// Sample point for radius index i, angle index j.
  cplx point(std::size_t i, int j) const;
  std::vector<cplx> points() const;
};

/// Evaluates the class condition for a fixed (f, p), caching D^u f and D^v f.
///
/// value(z) = Re Q - k |Q - 1| - alpha with Q = D^u f(z) / D^v f(z), which is
/// the minimum over phi of Re{(1 + k e^{i phi}) Q - k e^{i phi}} - alpha.
class ConditionEvaluator {
 public:
  ConditionEvaluator(const HarmonicPoly& f, const ParamSet& p, double guard_eps = 1e-9);

  /// nullopt when |D^v f(z)| <= guard_eps. Requires |z| < 1.
  std::optional<double> value(cplx z) const;

  /// Functional at a fixed phase: Re{(1 + k e^{i phi}) Q - k e^{i phi}} - alpha.
  std::optional<double> value_at_phase(cplx z, double phi) const;

  /// Q = D^u f(z) / D^v f(z), or nullopt under the guard.
  std::optional<cplx> ratio(cplx z) const;

 private:
  HarmonicPoly du_;
  HarmonicPoly dv_;
  double k_;
  double alpha_;
  double guard_eps_;
};

std::optional<double> pointwise_condition(const HarmonicPoly& f, const ParamSet& p, cplx z,
                                          double guard_eps = 1e-9);

struct ConditionScan {
  double min_value;
  cplx argmin_z;
  std::size_t evaluated_points;
  std::size_t skipped_points;
};

/// Minimum of the class condition over the grid. Throws std::runtime_error
/// when every grid point is skipped.
ConditionScan sampled_condition_min(const HarmonicPoly& f, const ParamSet& p, const GridSpec& g);

/// min over the grid of |h'(z)| - |g'(z)|.
double sense_preserving_margin(const HarmonicPoly& f, const GridSpec& g);

struct UnivalenceResult {
  bool univalent;
  /// min over distinct grid pairs of |f(z1) - f(z2)| / |z1 - z2|.
  double constant;
};

inline constexpr std::size_t kMaxUnivalencePoints = 4096;
/// Constants at or below this are rounding noise (f(z) = z^2 on a symmetric
/// grid lands near 1e-16), so they do not count as distinct images.
inline constexpr double kUnivalenceFloor = 1e-9;

/// Pairwise-distinctness check of grid images; a desk surrogate for
/// injectivity, not a proof. univalent iff constant > kUnivalenceFloor.
/// Throws std::invalid_argument for grids with more than
/// kMaxUnivalencePoints points.
UnivalenceResult univalence_desk_check(const HarmonicPoly& f, const GridSpec& g);

struct ProbeSample {
  double r;
  std::optional<double> value;
};

/// Condition at phi = 0 along z = r on the positive real axis.
std::vector<ProbeSample> necessity_probe(const TCoefficients& t, const ParamSet& p,
                                         std::span<const double> r_sequence, double guard_eps = 1e-9);

inline constexpr double kDistortionSlack = 1e-9;

struct DistortionCheck {
  bool ok;
  /// min over samples of |f| - lower and upper - |f| (negative when violated).
  double lower_slack;
  double upper_slack;
  /// Largest |f| seen per radius, in grid order.
  std::vector<double> max_abs_per_radius;
};

DistortionCheck distortion_check(const TCoefficients& t, const ParamSet& p, const GridSpec& g);

struct VerificationReport {
  double min_condition_value;
  cplx argmin_z;
  double min_jacobian_margin;
  bool univalent_ok;
  double univalence_constant;
  std::size_t evaluated_points;
  std::size_t skipped_points;
  bool pass;
};

/// Condition scan, sense-preservation margin and univalence check together.
/// pass iff min >= -tol, margin > 0 and the univalence check holds.
VerificationReport verify(const HarmonicPoly& f, const ParamSet& p, const GridSpec& g);

/// CSV rows "r,theta,condition_value" over the grid; skipped points carry an
/// empty value.
void write_condition_csv(std::ostream& out, const HarmonicPoly& f, const ParamSet& p, const GridSpec& g);

}  // namespace harmclass
