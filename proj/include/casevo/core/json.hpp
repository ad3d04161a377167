#pragma once

#include <json.hpp>

namespace casevo {

// Insertion-ordered so serialized payloads are byte-stable.
using Json = nlohmann::ordered_json;

}  // namespace casevo
