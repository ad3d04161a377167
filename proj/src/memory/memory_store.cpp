#include "casevo/memory/memory_store.hpp"

#include <algorithm>

#include "casevo/core/errors.hpp"
#include "casevo/llm/gateway.hpp"

namespace casevo {

std::string_view to_string(MemoryKind kind) noexcept {
  switch (kind) {
    case MemoryKind::Observation: return "observation";
    case MemoryKind::Discussion: return "discussion";
    case MemoryKind::Reflection: return "reflection";
  }
  return "observation";
}

Json to_json(const MemoryItem& item) {
  Json j = Json::object();
  j["id"] = item.id;
  j["round"] = item.round;
  j["kind"] = std::string(to_string(item.kind));
  j["text"] = item.text;
  return j;
}

MemoryStore::MemoryStore(std::string owner, std::shared_ptr<const Embedder> embedder, std::size_t capacity)
    : owner_(std::move(owner)), embedder_(std::move(embedder)), capacity_(capacity) {
  if (!embedder_) throw EmbedderError("memory store needs an embedder");
  if (capacity_ == 0) throw ParamError("short-term capacity must be >= 1");
}

const MemoryItem& MemoryStore::add(int round, MemoryKind kind, std::string text) {
  if (text.empty()) throw ParamError("memory text must be non-empty");
  MemoryItem item;
  item.embedding = embedder_->embed(text);
  if (item.embedding.size() != embedder_->dimension()) throw EmbedderError("embedder returned wrong dimension");
  item.id = next_id_++;
  item.round = round;
  item.kind = kind;
  item.text = std::move(text);
  long_term_.push_back(std::move(item));
  short_term_.push_back(long_term_.size() - 1);
  if (short_term_.size() > capacity_) short_term_.pop_front();
  return long_term_.back();
}

std::vector<MemoryItem> MemoryStore::retrieve(std::string_view query, std::size_t k) const {
  if (k == 0) throw ParamError("retrieve needs k >= 1");
  if (long_term_.empty()) return {};
  const auto q = embedder_->embed(query);

  struct Scored {
    double score;
    std::size_t index;
  };
  std::vector<Scored> scored;
  scored.reserve(long_term_.size());
  for (std::size_t i = 0; i < long_term_.size(); ++i) {
    scored.push_back({cosine_similarity(q, long_term_[i].embedding), i});
  }
  const auto better = [&](const Scored& a, const Scored& b) {
    if (a.score != b.score) return a.score > b.score;
    const auto& ia = long_term_[a.index];
    const auto& ib = long_term_[b.index];
    if (ia.round != ib.round) return ia.round > ib.round;
    return ia.id > ib.id;
  };
  const auto take = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(take), scored.end(), better);

  std::vector<MemoryItem> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back(long_term_[scored[i].index]);
  return out;
}

std::vector<MemoryItem> MemoryStore::recent(std::size_t n) const {
  const auto take = std::min(n, short_term_.size());
  std::vector<MemoryItem> out;
  out.reserve(take);
  for (auto it = short_term_.end() - static_cast<std::ptrdiff_t>(take); it != short_term_.end(); ++it) {
    out.push_back(long_term_[*it]);
  }
  return out;
}

std::string format_memories(const std::vector<MemoryItem>& items) {
  if (items.empty()) return "(none)";
  std::string out;
  for (const auto& m : items) {
    if (!out.empty()) out += '\n';
    out += "- [round " + std::to_string(m.round) + ", " + std::string(to_string(m.kind)) + "] " + m.text;
  }
  return out;
}

std::string summarize_window(const MemoryStore& store, LlmGateway& llm, int round) {
  if (store.short_term_size() == 0) throw ParamError("consolidate needs a non-empty short-term window");
  TemplateVars vars{{"memories", format_memories(store.recent(store.short_term_size()))}};
  return llm.call("consolidate", vars, store.owner(), round).text;
}

const MemoryItem& consolidate(MemoryStore& store, LlmGateway& llm, int round) {
  auto summary = summarize_window(store, llm, round);
  return store.add(round, MemoryKind::Reflection, std::move(summary));
}

}  // namespace casevo
