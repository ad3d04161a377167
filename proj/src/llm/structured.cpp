#include "casevo/llm/structured.hpp"

#include <cctype>
#include <optional>

#include "casevo/core/errors.hpp"

namespace casevo {

namespace {

std::optional<Json> try_object(std::string_view text) {
  auto j = Json::parse(text.begin(), text.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  return j;
}

// Balanced-brace span starting at text[start] == '{', honouring JSON strings.
std::optional<std::string_view> object_span(std::string_view text, std::size_t start) {
  int depth = 0;
  bool in_string = false;
  bool escaped = false;
  for (std::size_t i = start; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (escaped) {
        escaped = false;
      } else if (c == '\\') {
        escaped = true;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '{') {
      ++depth;
    } else if (c == '}') {
      if (--depth == 0) return text.substr(start, i - start + 1);
    }
  }
  return std::nullopt;
}

std::optional<Json> first_bare_object(std::string_view text) {
  for (auto pos = text.find('{'); pos != std::string_view::npos; pos = text.find('{', pos + 1)) {
    if (auto span = object_span(text, pos)) {
      if (auto j = try_object(*span)) return j;
    }
  }
  return std::nullopt;
}

std::string excerpt(std::string_view text) {
  constexpr std::size_t kMax = 120;
  std::string out(text.substr(0, kMax));
  if (text.size() > kMax) out += "...";
  return out;
}

}  // namespace

Json parse_structured(std::string_view text) {
  constexpr std::string_view fence = "```";
  for (auto pos = text.find(fence); pos != std::string_view::npos; pos = text.find(fence, pos + fence.size())) {
    std::size_t body = pos + fence.size();
    while (body < text.size() && std::isalpha(static_cast<unsigned char>(text[body]))) ++body;
    while (body < text.size() && std::isspace(static_cast<unsigned char>(text[body]))) ++body;
    if (body >= text.size() || text[body] != '{') continue;
    // The span scan honours strings, so a fence inside a value does not end the block.
    if (auto span = object_span(text, body)) {
      if (auto j = try_object(*span)) return *j;
    }
  }
  if (auto j = first_bare_object(text)) return *j;
  throw ParseError("no JSON object found in: \"" + excerpt(text) + "\"");
}

std::string wrap_structured(const Json& payload) { return "```json\n" + payload.dump() + "\n```"; }

}  // namespace casevo
