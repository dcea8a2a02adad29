#pragma once

#include <string>

#include <json.hpp>

#include "jsr/bounds.hpp"

namespace jsr {

inline constexpr const char* kToolName = "jsr";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kReportSchema = "jsr-report/1";

struct NamedSet {
  std::string name;
  MatrixSet set;
};

/// Parses {"name": string?, "matrices": [[[row], ...], ...]}. Throws
/// ValidationError for malformed documents and DimensionError for ragged or
/// inconsistent shapes.
NamedSet parse_matrix_set(const nlohmann::json& doc, bool cone_asserted = false);
NamedSet load_matrix_set(const std::string& path, bool cone_asserted = false);

nlohmann::json interval_to_json(const CertifiedInterval& ci);

/// Full report. Timings live only under "timings_ms" so the rest of the
/// document is a deterministic function of the inputs.
nlohmann::json make_report(const NamedSet& input, const CombinedBounds& result);

nlohmann::json plan_to_json(std::size_t m, std::size_t n, const ApproximationPlan& plan);

}  // namespace jsr
