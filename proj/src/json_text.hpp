#pragma once

#include <nlohmann/json.hpp>
#include <string>

namespace qprime::io {

/// Two-space indented JSON with floats at 17 significant digits, matching
/// the CSV writers. Non-finite floats become null.
std::string dump_json(const nlohmann::ordered_json& value);

}  // namespace qprime::io
