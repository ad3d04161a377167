#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "casevo/core/json.hpp"
#include "casevo/memory/embedder.hpp"

namespace casevo {

class LlmGateway;

enum class MemoryKind { Observation, Discussion, Reflection };

std::string_view to_string(MemoryKind kind) noexcept;

struct MemoryItem {
  std::uint64_t id = 0;
  int round = 0;
  MemoryKind kind = MemoryKind::Observation;
  std::string text;
  std::vector<double> embedding;
};

// Without the embedding.
Json to_json(const MemoryItem& item);

inline constexpr std::size_t kDefaultShortTermCapacity = 16;

// Per-agent memory: a bounded recency window over an append-only,
// embedding-indexed long-term store.
class MemoryStore {
 public:
  MemoryStore(std::string owner, std::shared_ptr<const Embedder> embedder,
              std::size_t short_term_capacity = kDefaultShortTermCapacity);

  const std::string& owner() const noexcept { return owner_; }
  std::size_t short_term_capacity() const noexcept { return capacity_; }

  // Embeds and appends. Throws ParamError on empty text.
  const MemoryItem& add(int round, MemoryKind kind, std::string text);

  // Up to k items by descending cosine similarity to the query; ties go to
  // the higher round, then the higher id. Throws ParamError if k == 0.
  std::vector<MemoryItem> retrieve(std::string_view query, std::size_t k) const;

  // Last min(n, window) items of the short-term window, oldest first.
  std::vector<MemoryItem> recent(std::size_t n) const;

  std::size_t short_term_size() const noexcept { return short_term_.size(); }
  const std::vector<MemoryItem>& long_term() const noexcept { return long_term_; }

 private:
  std::string owner_;
  std::shared_ptr<const Embedder> embedder_;
  std::size_t capacity_;
  std::uint64_t next_id_ = 0;
  std::vector<MemoryItem> long_term_;
  std::deque<std::size_t> short_term_;  // indices into long_term_
};

// "- [round r, kind] text" per line; the form memories take inside prompts.
std::string format_memories(const std::vector<MemoryItem>& items);

// Backend summary of the whole short-term window (template "consolidate",
// variable "memories"). Does not modify the store.
std::string summarize_window(const MemoryStore& store, LlmGateway& llm, int round);

// summarize_window, stored as a reflection. The window is kept.
// Throws ParamError when the window is empty.
const MemoryItem& consolidate(MemoryStore& store, LlmGateway& llm, int round);

}  // namespace casevo
