#pragma once

// JSON state descriptors, result serialization and locale-independent
// number formatting.

#include <ostream>
#include <string>
#include <variant>

#include <json.hpp>

#include "qcorr/correlations.hpp"
#include "qcorr/geometry.hpp"

namespace qcorr {

// A parsed state descriptor. Family descriptors keep their parameters so
// closed forms can be used; raw ones carry only the matrix.
struct StateDescriptor {
  std::variant<WernerParams, BellDiagonalParams, CMat4> spec;

  // Validated density matrix; throws DomainError when unphysical.
  TwoQubitState state() const;
  bool is_werner() const { return std::holds_alternative<WernerParams>(spec); }
  bool is_bell_diagonal() const { return std::holds_alternative<BellDiagonalParams>(spec); }
  // Bell coefficients for both families.
  std::optional<BellDiagonalParams> bell_params() const;
};

// {"family":"bell_diagonal","c":[c1,c2,c3]}, {"family":"werner","z":z},
// {"family":"raw","matrix":[[re,im], ... 16 entries row-major]}.
// Throws DomainError on malformed input.
StateDescriptor parse_state(const nlohmann::json& j);
StateDescriptor parse_state(const std::string& text);
nlohmann::json to_json(const StateDescriptor& s);

nlohmann::json to_json(const MeasureResult& r);
MeasureResult result_from_json(const nlohmann::json& j);

// 12 significant digits, '.' decimal separator, "inf"/"-inf"/"nan";
// integral values keep a trailing ".0".
std::string format_number(double v);

void write_csv(std::ostream& os, const Table& t);
nlohmann::json to_json(const Table& t);

void write_surface_csv(std::ostream& os, const SurfacePointCloud& cloud, bool with_edges);
nlohmann::json to_json(const SurfacePointCloud& cloud, bool with_edges);

}  // namespace qcorr
