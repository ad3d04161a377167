#pragma once

#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "casevo/core/errors.hpp"

namespace casevo {

// Attempts per agent behavior before the scenario fallback applies.
inline constexpr int kAgentAttempts = 3;

template <class T>
struct Attempted {
  std::optional<T> value;
  std::vector<std::string> errors;  // one message per failed attempt
};

// Runs fn up to `attempts` times. Parse failures and transient backend
// failures are absorbed and reported; anything else propagates.
template <class F>
auto attempt_behavior(F&& fn, int attempts = kAgentAttempts) -> Attempted<std::invoke_result_t<F&>> {
  Attempted<std::invoke_result_t<F&>> out;
  for (int i = 0; i < attempts; ++i) {
    try {
      out.value.emplace(fn());
      return out;
    } catch (const ParseError& e) {
      out.errors.emplace_back(std::string("parse: ") + e.what());
    } catch (const BackendError& e) {
      if (!e.transient()) throw;
      out.errors.emplace_back(std::string("backend: ") + e.what());
    }
  }
  return out;
}

}  // namespace casevo
