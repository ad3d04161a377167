#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>

#include "casevo/core/log_record.hpp"

namespace casevo {

// Append-only JSON-lines sink. One record per line, flushed at round
// boundaries by the caller.
class EventLog {
 public:
  explicit EventLog(std::filesystem::path path);
  ~EventLog();

  EventLog(const EventLog&) = delete;
  EventLog& operator=(const EventLog&) = delete;

  void append(const LogRecord& record);
  void flush();
  void close();

  const std::filesystem::path& path() const noexcept { return path_; }
  std::size_t lines() const noexcept { return lines_; }
  bool is_open() const noexcept { return out_.is_open(); }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t lines_ = 0;
};

}  // namespace casevo
