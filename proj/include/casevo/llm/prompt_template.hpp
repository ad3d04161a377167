#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "casevo/core/json.hpp"

namespace casevo {

using TemplateVars = std::map<std::string, std::string, std::less<>>;

// Text with `{name}` placeholders. `{{` and `}}` render as literal braces.
// Names may contain letters, digits, '_' and '.'.
class PromptTemplate {
 public:
  PromptTemplate(std::string name, std::string body);

  const std::string& name() const noexcept { return name_; }
  const std::string& body() const noexcept { return body_; }

  // Placeholders in order of first appearance, without duplicates.
  const std::vector<std::string>& placeholders() const noexcept { return placeholders_; }

  // Throws MissingVarError naming the first placeholder absent from vars.
  std::string render(const TemplateVars& vars) const;

 private:
  struct Segment {
    bool is_var = false;
    std::string text;
  };

  std::string name_;
  std::string body_;
  std::vector<Segment> segments_;
  std::vector<std::string> placeholders_;
};

std::string render(const PromptTemplate& tmpl, const TemplateVars& vars);

class TemplateRegistry {
 public:
  void add(PromptTemplate tmpl);
  void add(std::string name, std::string body);

  bool contains(std::string_view name) const;
  // Throws MissingTemplateError.
  const PromptTemplate& get(std::string_view name) const;
  std::vector<std::string> names() const;

  // {"name": "body", ...}; a body may also be an array of lines joined by '\n'.
  static TemplateRegistry from_json(const Json& j);

 private:
  std::map<std::string, PromptTemplate, std::less<>> templates_;
};

}  // namespace casevo
