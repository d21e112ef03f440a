#pragma once

#include <string>

#include <json.hpp>

#include "bipglue/analysis.hpp"
#include "bipglue/compile.hpp"

namespace bipglue {

// JSON shapes used by the command-line tool. Keys are emitted sorted, so
// the serialized output is stable.

nlohmann::json classification_json(const std::string& operator_name, const Classification& c);
std::string classification_text(const std::string& operator_name, const Classification& c);

nlohmann::json verification_json(const VerificationReport& report);
std::string verification_text(const VerificationReport& report);

} // namespace bipglue
