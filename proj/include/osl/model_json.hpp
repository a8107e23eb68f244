#pragma once

#include <json.hpp>

#include "osl/datagen.hpp"

namespace osl {

// JSON layout is documented in docs/model_schema.md.
void to_json(nlohmann::json& j, const SupportSpec& s);
void from_json(const nlohmann::json& j, SupportSpec& s);
void to_json(nlohmann::json& j, const OutlierSpec& o);
void from_json(const nlohmann::json& j, OutlierSpec& o);
void to_json(nlohmann::json& j, const MixtureModel& m);
void from_json(const nlohmann::json& j, MixtureModel& m);

/// Parses and validates a model document. Throws InvalidInput on malformed
/// or inconsistent input.
MixtureModel model_from_json(const nlohmann::json& j);

}  // namespace osl
