#include "casevo/llm/prompt_template.hpp"

#include <algorithm>
#include <cctype>

#include "casevo/core/errors.hpp"

namespace casevo {

namespace {

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

}  // namespace

PromptTemplate::PromptTemplate(std::string name, std::string body)
    : name_(std::move(name)), body_(std::move(body)) {
  std::string literal;
  const auto flush_literal = [&] {
    if (!literal.empty()) segments_.push_back({false, std::move(literal)});
    literal.clear();
  };

  for (std::size_t i = 0; i < body_.size(); ++i) {
    const char c = body_[i];
    if (c == '{') {
      if (i + 1 < body_.size() && body_[i + 1] == '{') {
        literal += '{';
        ++i;
        continue;
      }
      const auto close = body_.find('}', i + 1);
      if (close == std::string::npos) {
        throw TemplateSyntaxError("template '" + name_ + "': unterminated placeholder at offset " +
                                  std::to_string(i));
      }
      std::string var = body_.substr(i + 1, close - i - 1);
      if (var.empty() || !std::all_of(var.begin(), var.end(), is_name_char)) {
        throw TemplateSyntaxError("template '" + name_ + "': invalid placeholder '{" + var + "}' (use '{{' for a literal brace)");
      }
      flush_literal();
      if (std::find(placeholders_.begin(), placeholders_.end(), var) == placeholders_.end()) {
        placeholders_.push_back(var);
      }
      segments_.push_back({true, std::move(var)});
      i = close;
    } else if (c == '}' && i + 1 < body_.size() && body_[i + 1] == '}') {
      literal += '}';
      ++i;
    } else if (c == '}') {
      throw TemplateSyntaxError("template '" + name_ + "': stray '}' at offset " + std::to_string(i) + " (use '}}')");
    } else {
      literal += c;
    }
  }
  flush_literal();
}

std::string PromptTemplate::render(const TemplateVars& vars) const {
  for (const auto& p : placeholders_) {
    if (vars.find(p) == vars.end()) throw MissingVarError(p);
  }
  std::string out;
  for (const auto& seg : segments_) {
    out += seg.is_var ? vars.find(seg.text)->second : seg.text;
  }
  return out;
}

std::string render(const PromptTemplate& tmpl, const TemplateVars& vars) { return tmpl.render(vars); }

void TemplateRegistry::add(PromptTemplate tmpl) {
  auto name = tmpl.name();
  templates_.insert_or_assign(std::move(name), std::move(tmpl));
}

void TemplateRegistry::add(std::string name, std::string body) {
  add(PromptTemplate(std::move(name), std::move(body)));
}

bool TemplateRegistry::contains(std::string_view name) const { return templates_.find(name) != templates_.end(); }

const PromptTemplate& TemplateRegistry::get(std::string_view name) const {
  auto it = templates_.find(name);
  if (it == templates_.end()) throw MissingTemplateError(std::string(name));
  return it->second;
}

std::vector<std::string> TemplateRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : templates_) out.push_back(name);
  return out;
}

TemplateRegistry TemplateRegistry::from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("templates must be a JSON object of name -> body");
  TemplateRegistry reg;
  for (const auto& [name, body] : j.items()) {
    if (body.is_string()) {
      reg.add(name, body.get<std::string>());
    } else if (body.is_array()) {
      std::string joined;
      for (std::size_t i = 0; i < body.size(); ++i) {
        if (!body[i].is_string()) throw ConfigError("template '" + name + "': lines must be strings");
        if (i) joined += '\n';
        joined += body[i].get<std::string>();
      }
      reg.add(name, std::move(joined));
    } else {
      throw ConfigError("template '" + name + "' must be a string or array of lines");
    }
  }
  return reg;
}

}  // namespace casevo
