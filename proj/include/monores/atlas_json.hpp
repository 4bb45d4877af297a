#pragma once

#include "monores/verification.hpp"

#include <json.hpp>

namespace monores {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json series_to_json(const Series& s);
Series series_from_json(const Json& j);

Json report_to_json(const Report& r);
Report report_from_json(const Json& j);

/// Full atlas with exact rational payloads. ClassContexts shared between charts are written
/// once into a top-level "contexts" table, numbered by first use.
Json atlas_to_json(const Atlas& atlas, const Report* verification = nullptr);
/// Inverse of atlas_to_json; throws Error on a missing field or a schema mismatch.
Atlas atlas_from_json(const Json& j);

}  // namespace monores
