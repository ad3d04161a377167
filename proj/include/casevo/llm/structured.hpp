#pragma once

#include <string>
#include <string_view>

#include "casevo/core/json.hpp"

namespace casevo {

// First well-formed JSON object in model output. A fenced ``` block holding
// an object wins over a bare object appearing earlier. Throws ParseError.
Json parse_structured(std::string_view text);

// The inverse used by fixtures and scripted tables: a fenced json block.
std::string wrap_structured(const Json& payload);

}  // namespace casevo
