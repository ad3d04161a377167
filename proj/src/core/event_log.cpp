#include "casevo/core/event_log.hpp"

#include <system_error>

#include "casevo/core/errors.hpp"

namespace casevo {

EventLog::EventLog(std::filesystem::path path) : path_(std::move(path)) {
  if (path_.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path_.parent_path(), ec);
    if (ec) {
      throw IoError("failed to create directory '" + path_.parent_path().string() + "': " + ec.message());
    }
  }
  out_.open(path_, std::ios::binary | std::ios::trunc);
  if (!out_) throw IoError("failed to open event log '" + path_.string() + "'");
}

EventLog::~EventLog() {
  if (out_.is_open()) out_.close();
}

void EventLog::append(const LogRecord& record) {
  if (!out_.is_open()) throw IoError("event log '" + path_.string() + "' is closed");
  out_ << to_line(record) << '\n';
  if (!out_) throw IoError("failed while writing event log '" + path_.string() + "'");
  ++lines_;
}

void EventLog::flush() {
  if (!out_.is_open()) return;
  out_.flush();
  if (!out_) throw IoError("failed to flush event log '" + path_.string() + "'");
}

void EventLog::close() {
  if (!out_.is_open()) return;
  flush();
  out_.close();
}

}  // namespace casevo
