#include "casevo/core/event_queue.hpp"

#include "casevo/core/errors.hpp"

namespace casevo {

void EventQueue::schedule(GlobalEvent event, int current_round) {
  if (event.round < current_round) {
    throw PastRoundError("cannot schedule event for round " + std::to_string(event.round) +
                         " during round " + std::to_string(current_round));
  }
  by_round_[event.round].push_back(std::move(event));
  ++size_;
}

std::vector<GlobalEvent> EventQueue::take(int round) {
  auto it = by_round_.find(round);
  if (it == by_round_.end()) return {};
  auto events = std::move(it->second);
  by_round_.erase(it);
  size_ -= events.size();
  return events;
}

}  // namespace casevo
