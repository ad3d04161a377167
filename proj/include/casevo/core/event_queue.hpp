#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "casevo/core/json.hpp"

namespace casevo {

// Broadcast delivered to every agent at the start of its target round.
struct GlobalEvent {
  int round = 0;
  std::string text;
  Json metadata = Json::object();
};

// Scheduled global events, ordered by (round, insertion order).
class EventQueue {
 public:
  // Throws PastRoundError when event.round < current_round.
  void schedule(GlobalEvent event, int current_round);

  // Removes and returns every event for `round`, FIFO.
  std::vector<GlobalEvent> take(int round);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

 private:
  std::map<int, std::vector<GlobalEvent>> by_round_;
  std::size_t size_ = 0;
};

}  // namespace casevo
