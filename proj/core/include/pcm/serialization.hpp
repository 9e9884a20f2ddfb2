#pragma once

#include <nlohmann/json.hpp>

#include "pcm/histogram.hpp"
#include "pcm/inconsistency.hpp"
#include "pcm/matrix.hpp"
#include "pcm/monotonicity.hpp"
#include "pcm/weighting.hpp"

// JSON forms of the library types. Alternative indices are written 1-based.
// Doubles are emitted with round-trip precision.

namespace pcm {

inline constexpr const char* kJsonSchemaVersion = "1";

/// {"n": 4, "upper": [...]}
[[nodiscard]] nlohmann::json to_json(const PairwiseComparisonMatrix& a);
[[nodiscard]] PairwiseComparisonMatrix matrix_from_json(const nlohmann::json& j);

/// {"scale": "discrete", "values": {"4": 0.884, ...}, "sample_size": ...}
[[nodiscard]] nlohmann::json to_json(const RandomIndexTable& table);
[[nodiscard]] RandomIndexTable ri_table_from_json(const nlohmann::json& j);

[[nodiscard]] nlohmann::json to_json(const InconsistencyReport& report);
[[nodiscard]] nlohmann::json to_json(const EigenResult& result);
[[nodiscard]] nlohmann::json to_json(const MonotonicityReport& report);

[[nodiscard]] nlohmann::json to_json(const ViolationExample& example);
[[nodiscard]] ViolationExample violation_example_from_json(const nlohmann::json& j);

[[nodiscard]] nlohmann::json to_json(const CrHistogram& histogram);
[[nodiscard]] CrHistogram histogram_from_json(const nlohmann::json& j);

}  // namespace pcm
