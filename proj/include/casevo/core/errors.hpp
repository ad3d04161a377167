#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace casevo {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class PastRoundError : public Error {
 public:
  using Error::Error;
};

// Backend failures. `transient()` failures are retried by the caller and,
// once retries are exhausted at the agent level, resolved by the scenario
// fallback. Non-transient failures abort the run.
class BackendError : public Error {
 public:
  explicit BackendError(const std::string& what, bool transient = true)
      : Error(what), transient_(transient) {}
  bool transient() const noexcept { return transient_; }

 private:
  bool transient_;
};

class TimeoutError : public BackendError {
 public:
  explicit TimeoutError(const std::string& what) : BackendError(what, true) {}
};

class HttpStatusError : public BackendError {
 public:
  HttpStatusError(int status, const std::string& what)
      : BackendError(what, status >= 500 || status == 429 || status == 408), status_(status) {}
  int status() const noexcept { return status_; }

 private:
  int status_;
};

class ScriptMissError : public BackendError {
 public:
  explicit ScriptMissError(const std::string& what) : BackendError(what, false) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, std::optional<std::size_t> step = std::nullopt)
      : Error(what), step_(step) {}
  std::optional<std::size_t> step() const noexcept { return step_; }

 private:
  std::optional<std::size_t> step_;
};

class TemplateSyntaxError : public Error {
 public:
  using Error::Error;
};

class MissingTemplateError : public Error {
 public:
  explicit MissingTemplateError(std::string name)
      : Error("template not registered: " + name), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class MissingVarError : public Error {
 public:
  explicit MissingVarError(std::string var)
      : Error("missing template variable: " + var), var_(std::move(var)) {}
  const std::string& var() const noexcept { return var_; }

 private:
  std::string var_;
};

class EmbedderError : public Error {
 public:
  using Error::Error;
};

class ParamError : public Error {
 public:
  using Error::Error;
};

class UnknownNodeError : public Error {
 public:
  using Error::Error;
};

class NoEdgeError : public Error {
 public:
  using Error::Error;
};

class IsolatedNodeError : public Error {
 public:
  using Error::Error;
};

class NotNeighborsError : public Error {
 public:
  using Error::Error;
};

class TypologyError : public Error {
 public:
  using Error::Error;
};

class MissingCandidateError : public Error {
 public:
  using Error::Error;
};

class MissingVotesError : public Error {
 public:
  MissingVotesError(const std::string& what, std::vector<std::string> absent)
      : Error(what), absent_(std::move(absent)) {}
  const std::vector<std::string>& absent() const noexcept { return absent_; }

 private:
  std::vector<std::string> absent_;
};

class MalformedLogError : public Error {
 public:
  MalformedLogError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class EmptyLogError : public Error {
 public:
  using Error::Error;
};

}  // namespace casevo
