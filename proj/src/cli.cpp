#include "harmclass/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "harmclass/classkernel.hpp"
#include "harmclass/coeff_io.hpp"
#include "harmclass/oboudi.hpp"
#include "harmclass/sampling.hpp"
#include "harmclass/series.hpp"
#include "harmclass/verifier.hpp"

namespace harmclass::cli {

namespace {

using nlohmann::json;

/// Raised for bad flag combinations detected after parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParamOptions {
  std::optional<std::string> preset;
  std::optional<int> u;
  std::optional<int> v;
  std::optional<double> k;
  std::optional<double> alpha;
  std::optional<double> lambda;
};

void add_param_options(CLI::App* sub, ParamOptions& o) {
  sub->add_option("--preset", o.preset, "Named specialization (SH_alpha, KH_alpha, GH_alpha, RSH_v_alpha, kUSH_v1, kHCV, kUSH)");
  sub->add_option("--u", o.u, "Operator order u >= 1");
  sub->add_option("--v", o.v, "Operator order v, 0 <= v < u");
  sub->add_option("--k", o.k, "k >= 0");
  sub->add_option("--alpha", o.alpha, "Order alpha in [0, 1)");
  sub->add_option("--lambda", o.lambda, "Al-Oboudi parameter lambda >= 0");
}

ParamSet resolve_params(const ParamOptions& o) {
  try {
    if (o.preset) {
      if (o.u || o.lambda) throw UsageError("--preset fixes u and lambda; drop --u/--lambda");
      return preset(parse_preset(*o.preset), PresetArgs{o.alpha.value_or(0.0), o.v, o.k});
    }
    if (!o.u) throw UsageError("either --preset or --u is required");
    return ParamSet(*o.u, o.v.value_or(0), o.k.value_or(0.0), o.alpha.value_or(0.0), o.lambda.value_or(1.0));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

struct GridOptions {
  std::vector<double> radii;
  std::optional<int> angles;
  std::optional<double> tol;
  std::optional<double> guard;
};

void add_grid_options(CLI::App* sub, GridOptions& o) {
  sub->add_option("--radii", o.radii, "Sample radii in (0,1)")->delimiter(',');
  sub->add_option("--angles", o.angles, "Equispaced angles per circle (>= 8)");
  sub->add_option("--tol", o.tol, "Pass/fail slack for the class condition");
  sub->add_option("--guard", o.guard, "Minimum |D^v f| for evaluating the ratio");
}

GridSpec resolve_grid(const GridOptions& o, GridSpec base = GridSpec::default_grid()) {
  if (!o.radii.empty()) base.radii = o.radii;
  if (o.angles) base.angles = *o.angles;
  if (o.tol) base.tol = *o.tol;
  if (o.guard) base.guard_eps = *o.guard;
  try {
    base.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return base;
}

void emit(const json& j, const std::optional<std::string>& out_path, std::ostream& out) {
  if (out_path) {
    save_json(*out_path, j);
  } else {
    out << j.dump(2) << '\n';
  }
}

/// "n:w" pairs, e.g. "2:0.5".
std::vector<std::pair<std::size_t, double>> parse_index_weights(const std::vector<std::string>& items,
                                                                const char* flag) {
  std::vector<std::pair<std::size_t, double>> out;
  for (const auto& item : items) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw UsageError(std::string(flag) + " expects n:w, got '" + item + "'");
    std::size_t n = 0;
    const auto head = item.substr(0, colon);
    const auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), n);
    if (ec != std::errc() || ptr != head.data() + head.size() || n < 1) {
      throw UsageError(std::string(flag) + ": bad index in '" + item + "'");
    }
    try {
      std::size_t used = 0;
      const auto tail = item.substr(colon + 1);
      const double w = std::stod(tail, &used);
      if (used != tail.size()) throw std::invalid_argument("trailing characters");
      out.emplace_back(n, w);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": bad weight in '" + item + "'");
    }
  }
  return out;
}

json contributions(const HarmonicPoly& f, const ParamSet& p) {
  json rows = json::array();
  for (std::size_t n = 1; n <= f.degree(); ++n) {
    const double am = std::abs(f.a(n)), bm = std::abs(f.b(n));
    const double x = xi(n, p), e = eta(n, p);
    rows.push_back({{"n", n}, {"xi", x}, {"eta", e}, {"a_mag", am}, {"b_mag", bm},
                    {"a_term", x * am}, {"b_term", e * bm}});
  }
  return rows;
}

int cmd_check(const std::string& path, const ParamOptions& po, std::ostream& out) {
  const auto p = resolve_params(po);
  const auto loaded = load_coefficients(path);
  const double total = budget(loaded.poly, p);
  bool member = false;
  bool exact = false;
  if (loaded.magnitudes) {
    member = is_member_iff_TH(*loaded.magnitudes, p);
    exact = (loaded.magnitudes->u_parity() - p.u()) % 2 == 0;
  } else {
    member = is_member_sufficient(loaded.poly, p);
  }
  json verdict{{"command", "check"},
               {"file", path},
               {"params", to_json(p)},
               {"form", loaded.magnitudes ? "magnitude" : "complex"},
               {"budget", total},
               {"budget_limit", kBudgetLimit},
               {"member", member},
               {"exact_class_test", exact},
               {"normalized", loaded.poly.normalized()},
               {"class_eligible", loaded.poly.class_eligible()},
               {"contributions", contributions(loaded.poly, p)}};
  out << verdict.dump(2) << '\n';
  return member ? kExitOk : kExitNegative;
}

struct VerifyOptions {
  std::optional<std::string> file;
  std::optional<std::uint64_t> seed;
  std::optional<int> count;
  std::size_t max_degree = 10;
  std::optional<std::string> csv;
  std::optional<std::string> out;
};

int cmd_verify(const VerifyOptions& vo, const ParamOptions& po, const GridOptions& go, std::ostream& out) {
  const auto p = resolve_params(po);
  const auto g = resolve_grid(go);
  if (vo.file && (vo.count || vo.seed)) throw UsageError("give either a coefficient file or --count/--seed");

  if (vo.file) {
    const auto loaded = load_coefficients(*vo.file);
    const auto rep = verify(loaded.poly, p, g);
    json j = to_json(rep);
    j["params"] = to_json(p);
    j["file"] = *vo.file;
    if (vo.csv) {
      std::ofstream csv(*vo.csv);
      if (!csv) throw std::runtime_error("cannot write " + *vo.csv);
      write_condition_csv(csv, loaded.poly, p, g);
    }
    emit(j, vo.out, out);
    return rep.pass ? kExitOk : kExitNegative;
  }

  if (!vo.count) throw UsageError("verify needs a coefficient file or --count");
  if (*vo.count < 1) throw UsageError("--count must be >= 1");
  if (vo.max_degree < 2) throw UsageError("--degree must be >= 2");
  const std::uint64_t seed = vo.seed.value_or(0);
  Rng rng(seed);
  MemberSampling opts;
  opts.max_degree = vo.max_degree;
  int passed = 0;
  double worst = std::numeric_limits<double>::infinity();
  json failures = json::array();
  for (int i = 0; i < *vo.count; ++i) {
    const auto t = random_member(p, rng, opts);
    const auto rep = verify(to_poly(t), p, g);
    worst = std::min(worst, rep.min_condition_value);
    if (rep.pass) {
      ++passed;
    } else {
      failures.push_back({{"index", i}, {"coefficients", to_json(t)}, {"report", to_json(rep)}});
    }
  }
  json j{{"params", to_json(p)},
         {"seed", seed},
         {"count", *vo.count},
         {"passed", passed},
         {"failed", *vo.count - passed},
         {"worst_min_condition_value", worst},
         {"failures", failures},
         {"pass", passed == *vo.count}};
  emit(j, vo.out, out);
  return passed == *vo.count ? kExitOk : kExitNegative;
}

int cmd_apply(const std::string& path, int u, double lambda, const std::optional<std::string>& out_path,
              std::ostream& out) {
  const auto loaded = load_coefficients(path);
  HarmonicPoly result = loaded.poly;
  try {
    result = apply_harmonic(loaded.poly, {u, lambda});
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  emit(to_json(result), out_path, out);
  return kExitOk;
}

int cmd_extremal(const std::vector<std::string>& xs, const std::vector<std::string>& ys,
                 std::optional<std::size_t> degree_opt, const ParamOptions& po,
                 const std::optional<std::string>& out_path, std::ostream& out) {
  const auto p = resolve_params(po);
  const auto xw = parse_index_weights(xs, "--x");
  const auto yw = parse_index_weights(ys, "--y");
  std::size_t degree = 1;
  for (const auto& [n, w] : xw) {
    if (n < 2) throw UsageError("--x indices start at 2");
    degree = std::max(degree, n);
  }
  for (const auto& [n, w] : yw) degree = std::max(degree, n);
  if (degree_opt) {
    if (*degree_opt < degree) throw UsageError("--degree is smaller than the largest weight index");
    degree = *degree_opt;
  }
  std::vector<double> x(degree, 0.0), y(degree, 0.0);
  for (const auto& [n, w] : xw) x[n - 1] += w;
  for (const auto& [n, w] : yw) y[n - 1] += w;
  try {
    emit(to_json(sharp_function(p, x, y, degree)), out_path, out);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return kExitOk;
}

int cmd_extreme_points(const std::string& kind, std::size_t n, const ParamOptions& po,
                       const std::optional<std::string>& out_path, std::ostream& out, std::ostream& err) {
  const auto p = resolve_params(po);
  if (n < 1) throw UsageError("--n must be >= 1");
  std::optional<HarmonicPoly> f;
  bool eligible = true;
  if (kind == "P") {
    f = extreme_point_P(n, p);
  } else if (kind == "Q") {
    auto q = extreme_point_Q(n, p);
    f = std::move(q.f);
    eligible = q.class_eligible;
    if (!eligible) err << "warning: Q_" << n << " has |b_1| >= 1 and is not class-eligible\n";
  } else {
    throw UsageError("--kind must be P or Q");
  }
  json j = to_json(*f);
  j["class_eligible"] = eligible;
  j["budget"] = budget(*f, p);
  emit(j, out_path, out);
  return kExitOk;
}

std::vector<double> default_distortion_radii() { return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}; }

int cmd_distort(const std::optional<std::string>& file, std::optional<double> b1_opt, std::vector<double> rs,
                int angles, const ParamOptions& po, const std::optional<std::string>& out_path,
                std::ostream& out) {
  const auto p = resolve_params(po);
  if (rs.empty()) rs = default_distortion_radii();
  for (double r : rs) {
    if (!(r >= 0.0 && r < 1.0)) throw UsageError("--r values must lie in [0, 1)");
  }

  if (!file) {
    const double b1 = b1_opt.value_or(0.0);
    std::optional<DistortionEnvelope> env;
    try {
      env.emplace(p, b1);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    json rows = json::array();
    for (double r : rs) {
      const auto bnd = distortion_bounds(*env, r);
      rows.push_back({{"r", r}, {"lower", bnd.lower}, {"upper", bnd.upper}});
    }
    emit({{"params", to_json(p)}, {"b1", b1}, {"sigma", env->sigma}, {"tau", env->tau}, {"bounds", rows}},
         out_path, out);
    return kExitOk;
  }

  if (b1_opt) throw UsageError("--b1 is taken from the coefficient file; drop --b1");
  if (angles < 8) throw UsageError("--angles must be >= 8");
  const auto loaded = load_coefficients(*file);
  const double b1 = std::abs(loaded.poly.b(1));
  std::optional<DistortionEnvelope> env;
  try {
    env.emplace(p, b1);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::ostringstream csv;
  csv << std::setprecision(17) << "r,theta,abs_f,lower,upper\n";
  bool inside = true;
  for (double r : rs) {
    const auto bnd = distortion_bounds(*env, r);
    for (int j = 0; j < angles; ++j) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(angles);
      const double m = std::abs(eval(loaded.poly, std::polar(r, theta)));
      inside = inside && m >= bnd.lower - kDistortionSlack && m <= bnd.upper + kDistortionSlack;
      csv << r << ',' << theta << ',' << m << ',' << bnd.lower << ',' << bnd.upper << '\n';
    }
  }
  if (out_path) {
    std::ofstream f(*out_path);
    if (!f) throw std::runtime_error("cannot write " + *out_path);
    f << csv.str();
  } else {
    out << csv.str();
  }
  return inside ? kExitOk : kExitNegative;
}

int cmd_convolve(const std::string& f_path, const std::string& g_path, const std::optional<std::string>& out_path,
                 std::ostream& out) {
  const auto f = load_coefficients(f_path);
  const auto g = load_coefficients(g_path);
  emit(to_json(hadamard_convolve(f.poly, g.poly)), out_path, out);
  return kExitOk;
}

int cmd_combine(const std::vector<std::string>& files, const std::vector<double>& ts,
                const std::optional<std::string>& out_path, std::ostream& out) {
  if (files.size() != ts.size()) throw UsageError("--t needs one weight per input file");
  std::vector<HarmonicPoly> fs;
  for (const auto& path : files) fs.push_back(load_coefficients(path).poly);
  try {
    emit(to_json(convex_combine(fs, ts)), out_path, out);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return kExitOk;
}

int cmd_sample(std::uint64_t seed, std::size_t max_degree, const ParamOptions& po,
               const std::optional<std::string>& out_path, std::ostream& out) {
  const auto p = resolve_params(po);
  if (max_degree < 2) throw UsageError("--degree must be >= 2");
  Rng rng(seed);
  MemberSampling opts;
  opts.max_degree = max_degree;
  emit(to_json(random_member(p, rng, opts)), out_path, out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coefficient tests and numerical verification for k-uniformly starlike harmonic classes", "harmclass"};
  app.require_subcommand(1);

  std::optional<std::string> out_path;
  ParamOptions po;
  GridOptions go;

  auto* check = app.add_subcommand("check", "Coefficient budget and membership verdict");
  std::string check_file;
  check->add_option("file", check_file, "Coefficient JSON")->required();
  add_param_options(check, po);

  auto* verify_cmd = app.add_subcommand("verify", "Sample the class condition, Jacobian and injectivity on a disk grid");
  VerifyOptions vo;
  verify_cmd->add_option("file", vo.file, "Coefficient JSON");
  verify_cmd->add_option("--seed", vo.seed, "Seed for a random member batch");
  verify_cmd->add_option("--count", vo.count, "Number of random members to verify");
  verify_cmd->add_option("--degree", vo.max_degree, "Maximum degree of random members");
  verify_cmd->add_option("--csv", vo.csv, "Write (r, theta, condition_value) triples");
  verify_cmd->add_option("--out", vo.out, "Write the report here instead of stdout");
  add_param_options(verify_cmd, po);
  add_grid_options(verify_cmd, go);

  auto* apply = app.add_subcommand("apply", "Apply the Al-Oboudi operator D^u");
  std::string apply_file;
  int apply_u = 0;
  double apply_lambda = 1.0;
  apply->add_option("file", apply_file, "Coefficient JSON")->required();
  apply->add_option("--u", apply_u, "Operator order u >= 0")->required();
  apply->add_option("--lambda", apply_lambda, "lambda >= 0 (default 1)");
  apply->add_option("--out", out_path, "Output coefficient JSON");

  auto* extremal = app.add_subcommand("extremal", "Sharp function with convex weights over z^n and conj(z)^n");
  std::vector<std::string> xs, ys;
  std::optional<std::size_t> ext_degree;
  extremal->add_option("--x", xs, "Analytic weights n:w (n >= 2)");
  extremal->add_option("--y", ys, "Co-analytic weights n:w (n >= 1)");
  extremal->add_option("--degree", ext_degree, "Truncation degree");
  extremal->add_option("--out", out_path, "Output coefficient JSON");
  add_param_options(extremal, po);

  auto* extreme = app.add_subcommand("extreme-points", "Extreme point P_n or Q_n");
  std::string kind = "P";
  std::size_t ext_n = 1;
  extreme->add_option("--kind", kind, "P or Q");
  extreme->add_option("--n", ext_n, "Index n")->required();
  extreme->add_option("--out", out_path, "Output coefficient JSON");
  add_param_options(extreme, po);

  auto* distort = app.add_subcommand("distort", "Distortion bounds, or a CSV envelope for a coefficient file");
  std::optional<std::string> distort_file;
  std::optional<double> b1;
  std::vector<double> rs;
  int distort_angles = 64;
  distort->add_option("file", distort_file, "Coefficient JSON (CSV mode)");
  distort->add_option("--b1", b1, "|b_1| in [0, 1)");
  distort->add_option("--r", rs, "Radii in [0, 1)")->delimiter(',');
  distort->add_option("--angles", distort_angles, "Angles per radius in CSV mode");
  distort->add_option("--out", out_path, "Output file");
  add_param_options(distort, po);

  auto* convolve = app.add_subcommand("convolve", "Hadamard product of two coefficient files");
  std::string conv_f, conv_g;
  convolve->add_option("f", conv_f, "First coefficient JSON")->required();
  convolve->add_option("g", conv_g, "Second coefficient JSON")->required();
  convolve->add_option("--out", out_path, "Output coefficient JSON");

  auto* combine = app.add_subcommand("combine", "Convex combination of coefficient files");
  std::vector<std::string> comb_files;
  std::vector<double> comb_t;
  combine->add_option("files", comb_files, "Coefficient JSON files")->required();
  combine->add_option("--t", comb_t, "Weights, one per file")->delimiter(',')->required();
  combine->add_option("--out", out_path, "Output coefficient JSON");

  auto* sample = app.add_subcommand("sample", "Random member of the negative-coefficient subclass");
  std::uint64_t sample_seed = 0;
  std::size_t sample_degree = 10;
  sample->add_option("--seed", sample_seed, "Random seed");
  sample->add_option("--degree", sample_degree, "Maximum degree");
  sample->add_option("--out", out_path, "Output magnitude JSON");
  add_param_options(sample, po);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*check) return cmd_check(check_file, po, out);
    if (*verify_cmd) return cmd_verify(vo, po, go, out);
    if (*apply) return cmd_apply(apply_file, apply_u, apply_lambda, out_path, out);
    if (*extremal) return cmd_extremal(xs, ys, ext_degree, po, out_path, out);
    if (*extreme) return cmd_extreme_points(kind, ext_n, po, out_path, out, err);
    if (*distort) return cmd_distort(distort_file, b1, rs, distort_angles, po, out_path, out);
    if (*convolve) return cmd_convolve(conv_f, conv_g, out_path, out);
    if (*combine) return cmd_combine(comb_files, comb_t, out_path, out);
    if (*sample) return cmd_sample(sample_seed, sample_degree, po, out_path, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CoefficientFormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  err << "error: no subcommand\n";
  return kExitUsage;
}

}  // namespace harmclass::cli
