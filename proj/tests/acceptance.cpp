// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "harmclass/classkernel.hpp"
#include "harmclass/oboudi.hpp"
#include "harmclass/sampling.hpp"
#include "harmclass/verifier.hpp"

namespace {

using namespace harmclass;

struct Outcome {
  bool pass;
  std::string detail;
};

template <typename... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel_err(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

// Seven presets with their free parameters filled in.
std::vector<ParamSet> preset_sample() {
  return {preset(Preset::SH_alpha, {0.25}),
          preset(Preset::KH_alpha, {0.5}),
          preset(Preset::GH_alpha, {0.0}),
          preset(Preset::RSH_v_alpha, {0.3, 1}),
          preset(Preset::kUSH_v1, {0.2, 1, 0.5}),
          preset(Preset::kHCV, {0.1, std::nullopt, 1.0}),
          preset(Preset::kUSH, {0.4, std::nullopt, 2.0})};
}

// 1. Closed-form vs recursive operator; u <= 6, four lambdas, N <= 16, 100 sets each.
Outcome operator_oracle() {
  Rng rng(1001);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  double worst = 0.0;
  for (int u = 0; u <= 6; ++u) {
    for (double l : {0.0, 0.5, 1.0, 2.0}) {
      for (int set = 0; set < 100; ++set) {
        const std::size_t n = 1 + rng() % 16;
        std::vector<cplx> c(n);
        for (auto& x : c) x = {d(rng), d(rng)};
        const auto closed = apply_analytic_closed(c, {u, l});
        const auto rec = apply_analytic_recursive(c, {u, l});
        for (std::size_t i = 0; i < n; ++i) {
          worst = std::max(worst, std::abs(closed[i] - rec[i]) / std::max(std::abs(rec[i]), 1e-300));
        }
      }
    }
  }
  return {worst <= 1e-12, fmt("max rel err %.3e (tol 1e-12)", worst)};
}

// 2. General xi/eta vs the closed forms per preset.
Outcome preset_consistency() {
  double worst = 0.0;
  for (Preset name : kAllPresets) {
    for (double alpha : {0.0, 0.25, 0.5, 0.9}) {
      for (int v : {0, 1, 2}) {
        if (v != 0 && !preset_uses_v(name)) continue;
        for (double k : {0.0, 0.5, 1.0, 2.5}) {
          if (k != 0.0 && !preset_uses_k(name)) continue;
          PresetArgs args{alpha};
          if (preset_uses_v(name)) args.v = v;
          if (preset_uses_k(name)) args.k = k;
          const auto p = preset(name, args);
          for (std::size_t n = 1; n <= 50; ++n) {
            const auto [xc, ec] = corollary_coefficients(name, n, alpha, v, k);
            worst = std::max({worst, rel_err(xi(n, p), xc), rel_err(eta(n, p), ec)});
          }
        }
      }
    }
  }
  return {worst <= 1e-10, fmt("max rel err %.3e (tol 1e-10)", worst)};
}

// 3. (1 - alpha) xi = B^u (1 + k) - B^v (k + alpha) and the eta analogue.
Outcome necessity_identity() {
  double worst = 0.0;
  int points = 0;
  const double lambdas[] = {0.0, 0.5, 1.0, 2.5};
  for (int u = 1; u <= 4; ++u) {
    for (int v = 0; v < u; ++v) {
      for (double k : {0.0, 1.0, 3.0, 7.5}) {
        for (double alpha : {0.0, 0.25, 0.5, 0.75, 0.9}) {
          const ParamSet p(u, v, k, alpha, lambdas[points % 4]);
          ++points;
          const double s = (u - v) % 2 == 0 ? 1.0 : -1.0;
          for (std::size_t n = 1; n <= 50; ++n) {
            const double b = 1.0 + static_cast<double>(n - 1) * p.lambda();
            const double bu = std::pow(b, u), bv = std::pow(b, v);
            worst = std::max({worst, rel_err((1 - alpha) * xi(n, p), bu * (1 + k) - bv * (k + alpha)),
                              rel_err((1 - alpha) * eta(n, p), bu * (1 + k) - s * bv * (k + alpha))});
          }
        }
      }
    }
  }
  return {points == 200 && worst <= 1e-12, fmt("%d lattice points, max rel err %.3e (tol 1e-12)", points, worst)};
}

// 4. Budget of the sharp function is 2.
Outcome sharpness() {
  Rng rng(1004);
  std::exponential_distribution<double> w(1.0);
  const auto presets = preset_sample();
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto& p = presets[trial % 5];
    const std::size_t n = 2 + rng() % 12;
    std::vector<double> x(n, 0.0), y(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) x[i] = w(rng);
    for (auto& v : y) v = w(rng);
    // Keep y_1 below the class-eligibility limit.
    y[0] = std::min(y[0], 0.5);
    const double total = std::accumulate(x.begin(), x.end(), 0.0) + std::accumulate(y.begin(), y.end(), 0.0);
    for (auto& v : x) v /= total;
    for (auto& v : y) v /= total;
    worst = std::max(worst, std::abs(budget(sharp_function(p, x, y, n), p) - 2.0));
  }
  return {worst <= 1e-12, fmt("max |budget - 2| %.3e over 100 vectors (tol 1e-12)", worst)};
}

// 5. Sampled members pass condition, Jacobian and univalence checks.
Outcome sufficiency() {
  Rng rng(1005);
  const auto g = GridSpec::default_grid();
  double worst_cond = std::numeric_limits<double>::infinity();
  double worst_margin = std::numeric_limits<double>::infinity();
  int failures = 0, total = 0;
  for (const auto& p : preset_sample()) {
    for (int i = 0; i < 200; ++i) {
      const auto f = to_poly(random_member(p, rng));
      const auto scan = sampled_condition_min(f, p, g);
      const double margin = sense_preserving_margin(f, g);
      const bool uni = univalence_desk_check(f, g).univalent;
      worst_cond = std::min(worst_cond, scan.min_value);
      worst_margin = std::min(worst_margin, margin);
      if (!(scan.min_value >= -1e-6 && margin > 0.0 && uni)) ++failures;
      ++total;
    }
  }
  return {failures == 0, fmt("%d/%d members ok, worst condition %.3e (tol -1e-6), worst Jacobian margin %.3e",
                             total - failures, total, worst_cond, worst_margin)};
}

// 6. Closed-form phase minimum vs 4096-phase brute force.
Outcome phase_closed_form() {
  Rng rng(1006);
  std::uniform_real_distribution<double> rad(0.01, 0.99), ang(0.0, 2.0 * std::numbers::pi);
  const auto presets = preset_sample();
  constexpr int kPhases = 4096;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto& p = presets[i % presets.size()];
    const auto f = to_poly(random_member(p, rng));
    const cplx z = std::polar(rad(rng), ang(rng));
    const ConditionEvaluator cond(f, p);
    double brute = std::numeric_limits<double>::infinity();
    for (int j = 0; j < kPhases; ++j) {
      brute = std::min(brute, *cond.value_at_phase(z, 2.0 * std::numbers::pi * j / kPhases));
    }
    worst = std::max(worst, std::abs(*pointwise_condition(f, p, z) - brute));
  }
  return {worst <= 1e-6, fmt("max |closed - brute| %.3e over 1000 pairs (tol 1e-6)", worst)};
}

// 7. Violators go negative somewhere on the real-axis probe.
Outcome necessity_probe_check() {
  Rng rng(1007);
  const std::vector<double> rs{0.9, 0.99, 0.999, 0.9999};
  const auto presets = preset_sample();
  int negative = 0;
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 50; ++i) {
    const auto& p = presets[i % presets.size()];
    const auto t = random_violator(p, rng, 0.05, 0.5);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : necessity_probe(t, p, rs)) {
      if (s.value) best = std::min(best, *s.value);
    }
    worst = std::max(worst, best);
    if (best < 0.0) ++negative;
  }
  return {negative == 50, fmt("%d/50 violators negative, least negative probe minimum %.3e", negative, worst)};
}

// 8. Hadamard products of members stay inside the budget.
Outcome convolution_closure() {
  Rng rng(1008);
  const auto presets = preset_sample();
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto& p = presets[i % presets.size()];
    const auto f = to_poly(random_member(p, rng));
    const auto g = to_poly(random_member(p, rng));
    worst = std::max(worst, budget(hadamard_convolve(f, g), p));
  }
  return {worst <= 2.0 + 1e-12, fmt("max budget %.15f over 200 pairs (limit 2 + 1e-12)", worst)};
}

// 9. Convex combinations of up to five members stay inside the budget.
Outcome convex_closure() {
  Rng rng(1009);
  std::exponential_distribution<double> w(1.0);
  const auto presets = preset_sample();
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto& p = presets[i % presets.size()];
    const std::size_t m = 1 + rng() % 5;
    std::vector<HarmonicPoly> fs;
    std::vector<double> ts;
    for (std::size_t j = 0; j < m; ++j) {
      fs.push_back(to_poly(random_member(p, rng)));
      ts.push_back(w(rng));
    }
    const double total = std::accumulate(ts.begin(), ts.end(), 0.0);
    for (auto& t : ts) t /= total;
    worst = std::max(worst, budget(convex_combine(fs, ts), p));
  }
  return {worst <= 2.0 + 1e-12, fmt("max budget %.15f over 100 combinations (limit 2 + 1e-12)", worst)};
}

// 10. decompose/reconstruct roundtrip; budgets of P_n and Q_n.
Outcome extreme_points() {
  Rng rng(1010);
  const auto presets = preset_sample();
  double roundtrip = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto& p = presets[i % presets.size()];
    const auto t = random_member(p, rng);
    const auto back = reconstruct(decompose(t, p), p);
    for (std::size_t n = 1; n <= t.degree(); ++n) {
      roundtrip = std::max({roundtrip, std::abs(back.amag(n) - t.amag(n)), std::abs(back.bmag(n) - t.bmag(n))});
    }
  }
  double extreme = 0.0;
  bool flags_ok = true;
  for (const auto& p : preset_sample()) {
    for (std::size_t n = 1; n <= 20; ++n) {
      // P_1 = z carries only the normalization, so its budget is 1.
      const double want_p = n == 1 ? 1.0 : 2.0;
      extreme = std::max(extreme, std::abs(budget(extreme_point_P(n, p), p) - want_p));
      const auto q = extreme_point_Q(n, p);
      extreme = std::max(extreme, std::abs(budget(q.f, p) - 2.0));
      flags_ok = flags_ok && q.class_eligible == q.f.class_eligible();
    }
  }
  // Q_1 at eta(1) = 1 must be flagged.
  flags_ok = flags_ok && !extreme_point_Q(1, preset(Preset::SH_alpha, {0.0})).class_eligible;
  return {roundtrip <= 1e-12 && extreme <= 1e-12 && flags_ok,
          fmt("roundtrip max err %.3e, max budget error over P_n (n >= 2), Q_n %.3e (tol 1e-12), Q_1 flag %s", roundtrip, extreme,
              flags_ok ? "honored" : "WRONG")};
}

// 11. Members inside the distortion envelope; single-term sharp function on the upper bound.
Outcome distortion() {
  Rng rng(1011);
  const auto presets = preset_sample();
  const GridSpec g{{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}, 64, 1e-9, 1e-6};
  int outside = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 200; ++i) {
    const auto& p = presets[i % presets.size()];
    const auto chk = distortion_check(random_member(p, rng), p, g);
    worst = std::min({worst, chk.lower_slack, chk.upper_slack});
    if (!chk.ok) ++outside;
  }
  double gap = 0.0;
  for (const auto& p : presets) {
    const auto f = extreme_point_P(2, p);
    for (double r : {0.1, 0.2, 0.3, 0.4, 0.5}) {
      gap = std::max(gap, std::abs(distortion_bounds(p, 0.0, r).upper - std::abs(eval(f, cplx(-r, 0.0)))));
    }
  }
  return {outside == 0 && gap <= 1e-6,
          fmt("%d/200 members outside (slack 1e-9), min slack %.3e; sharp gap to upper %.3e (tol 1e-6)", outside,
              worst, gap)};
}

// 12. extremal -> check -> verify through the installed binary.
Outcome cli_roundtrip() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("harmclass_accept_" + std::to_string(std::random_device{}()));
  fs::create_directories(dir);
  const std::string file = (dir / "sharp.json").string();
  const std::string cli = HARMCLASS_CLI_PATH;
  const std::string params = " --preset GH_alpha --alpha 0.25";
  const std::string quiet = " > " + (dir / "log.txt").string() + " 2>&1";
  int codes[3];
  codes[0] = std::system((cli + " extremal --x 2:1.0" + params + " --out " + file + quiet).c_str());
  codes[1] = std::system((cli + " check " + file + params + quiet).c_str());
  codes[2] = std::system((cli + " verify " + file + params + quiet).c_str());
  fs::remove_all(dir);
  const bool ok = codes[0] == 0 && codes[1] == 0 && codes[2] == 0;
  return {ok, fmt("exit codes extremal=%d check=%d verify=%d", codes[0], codes[1], codes[2])};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
  double max_seconds;  // 0 means no runtime bound
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "operator oracle equivalence", operator_oracle, 1.0},
      {2, "preset consistency", preset_consistency, 1.0},
      {3, "necessity-form identity", necessity_identity, 0.0},
      {4, "sharpness", sharpness, 0.0},
      {5, "sufficiency sampling", sufficiency, 60.0},
      {6, "phase closed form", phase_closed_form, 0.0},
      {7, "necessity probe", necessity_probe_check, 0.0},
      {8, "convolution closure", convolution_closure, 0.0},
      {9, "convex-combination closure", convex_closure, 0.0},
      {10, "extreme-point representation", extreme_points, 0.0},
      {11, "distortion envelope", distortion, 0.0},
      {12, "CLI round-trip", cli_roundtrip, 0.0},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = o.pass;
    std::string timing = fmt("%.2f s", secs);
    if (c.max_seconds > 0.0) {
      timing += fmt(" (limit %.0f s)", c.max_seconds);
      pass = pass && secs < c.max_seconds;
    }
    if (!pass) ++failed;
    std::printf("[%s] %2d %s: %s; %s\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), timing.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
