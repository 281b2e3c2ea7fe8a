#include "harmclass/coeff_io.hpp"

#include <cmath>
#include <fstream>
#include <vector>

namespace harmclass {

namespace {

std::vector<double> number_array(const nlohmann::json& j, const char* key, std::size_t degree) {
  if (!j.contains(key)) throw CoefficientFormatError(std::string("missing field \"") + key + "\"");
  const auto& arr = j.at(key);
  if (!arr.is_array()) throw CoefficientFormatError(std::string("field \"") + key + "\" must be an array");
  if (arr.size() != degree) {
    throw CoefficientFormatError(std::string("field \"") + key + "\" must have `degree` entries");
  }
  std::vector<double> out;
  out.reserve(degree);
  for (const auto& x : arr) {
    if (!x.is_number()) throw CoefficientFormatError(std::string("field \"") + key + "\" must hold numbers");
    const double d = x.get<double>();
    if (!std::isfinite(d)) throw CoefficientFormatError(std::string("field \"") + key + "\" must be finite");
    out.push_back(d);
  }
  return out;
}

nlohmann::json complex_point(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

}  // namespace

LoadedCoefficients parse_coefficients(const nlohmann::json& j) {
  if (!j.is_object()) throw CoefficientFormatError("coefficient file must hold a JSON object");
  if (!j.contains("degree") || !j.at("degree").is_number_integer() || j.at("degree").get<long long>() < 1) {
    throw CoefficientFormatError("field \"degree\" must be a positive integer");
  }
  const auto degree = static_cast<std::size_t>(j.at("degree").get<long long>());

  if (j.contains("amag") || j.contains("bmag")) {
    if (!j.contains("u") || !j.at("u").is_number_integer()) {
      throw CoefficientFormatError("magnitude form requires an integer field \"u\"");
    }
    try {
      TCoefficients t(number_array(j, "amag", degree), number_array(j, "bmag", degree), j.at("u").get<int>());
      auto poly = to_poly(t);
      return {std::move(poly), std::move(t)};
    } catch (const std::invalid_argument& e) {
      throw CoefficientFormatError(e.what());
    }
  }

  const auto are = number_array(j, "a_re", degree), aim = number_array(j, "a_im", degree);
  const auto bre = number_array(j, "b_re", degree), bim = number_array(j, "b_im", degree);
  std::vector<cplx> a(degree), b(degree);
  for (std::size_t i = 0; i < degree; ++i) {
    a[i] = {are[i], aim[i]};
    b[i] = {bre[i], bim[i]};
  }
  return {HarmonicPoly(std::move(a), std::move(b)), std::nullopt};
}

LoadedCoefficients load_coefficients(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CoefficientFormatError("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw CoefficientFormatError(path.string() + ": " + e.what());
  }
  try {
    return parse_coefficients(j);
  } catch (const CoefficientFormatError& e) {
    throw CoefficientFormatError(path.string() + ": " + e.what());
  }
}

nlohmann::json to_json(const HarmonicPoly& f) {
  nlohmann::json are = nlohmann::json::array(), aim = nlohmann::json::array();
  nlohmann::json bre = nlohmann::json::array(), bim = nlohmann::json::array();
  for (cplx c : f.analytic()) {
    are.push_back(c.real());
    aim.push_back(c.imag());
  }
  for (cplx c : f.coanalytic()) {
    bre.push_back(c.real());
    bim.push_back(c.imag());
  }
  return {{"degree", f.degree()}, {"a_re", are}, {"a_im", aim}, {"b_re", bre}, {"b_im", bim}};
}

nlohmann::json to_json(const TCoefficients& t) {
  return {{"degree", t.degree()},
          {"amag", std::vector<double>(t.amags().begin(), t.amags().end())},
          {"bmag", std::vector<double>(t.bmags().begin(), t.bmags().end())},
          {"u", t.u_parity()}};
}

nlohmann::json to_json(const ParamSet& p) {
  return {{"u", p.u()}, {"v", p.v()}, {"k", p.k()}, {"alpha", p.alpha()}, {"lambda", p.lambda()}};
}

nlohmann::json to_json(const VerificationReport& rep) {
  return {{"min_condition_value", rep.min_condition_value},
          {"argmin_z", complex_point(rep.argmin_z)},
          {"min_jacobian_margin", rep.min_jacobian_margin},
          {"univalent_ok", rep.univalent_ok},
          {"univalence_constant", rep.univalence_constant},
          {"evaluated_points", rep.evaluated_points},
          {"skipped_points", rep.skipped_points},
          {"pass", rep.pass}};
}

void save_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace harmclass
