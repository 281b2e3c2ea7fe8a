#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "harmclass/classkernel.hpp"
#include "harmclass/series.hpp"
#include "harmclass/verifier.hpp"

namespace harmclass {

// Coefficient files come in two shapes, arrays in index order n = 1..N:
//   complex:   {"degree": N, "a_re": [...], "a_im": [...], "b_re": [...], "b_im": [...]}
//   magnitude: {"degree": N, "amag": [...], "bmag": [...], "u": u}

class CoefficientFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadedCoefficients {
  HarmonicPoly poly;
  /// Present when the input used the magnitude form.
  std::optional<TCoefficients> magnitudes;
};

LoadedCoefficients parse_coefficients(const nlohmann::json& j);
LoadedCoefficients load_coefficients(const std::filesystem::path& path);

nlohmann::json to_json(const HarmonicPoly& f);
nlohmann::json to_json(const TCoefficients& t);
nlohmann::json to_json(const ParamSet& p);
nlohmann::json to_json(const VerificationReport& rep);

/// Writes `j` followed by a newline; throws std::runtime_error on I/O failure.
void save_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace harmclass
