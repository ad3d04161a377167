#pragma once

#include <any>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "casevo/core/errors.hpp"
#include "casevo/core/json.hpp"

namespace casevo {

template <class T>
struct WorkItem {
  std::size_t agent = 0;
  std::function<T()> run;
};

// One phase worth of independent agent work. Items are in canonical
// (ascending agent id) order.
template <class T>
struct WorkBatch {
  int round = 0;
  std::string phase;
  std::vector<WorkItem<T>> items;
};

struct ItemFailure {
  std::size_t index = 0;
  std::size_t agent = 0;
  std::string message;
  std::exception_ptr error;
};

class BatchError : public Error {
 public:
  BatchError(std::vector<ItemFailure> failures, std::any partial);

  const std::vector<ItemFailure>& failures() const noexcept { return failures_; }

  // Successful results in canonical order; failed slots are empty.
  template <class T>
  const std::vector<std::optional<T>>& partial() const {
    return std::any_cast<const std::vector<std::optional<T>>&>(partial_);
  }

 private:
  std::vector<ItemFailure> failures_;
  std::any partial_;
};

struct PoolMetrics {
  std::uint64_t batches = 0;
  std::uint64_t submitted = 0;
  std::uint64_t completed = 0;
  std::uint64_t failed = 0;
  std::uint64_t retried = 0;
  std::size_t workers = 0;
  std::size_t peak_concurrency = 0;
  double wall_seconds = 0.0;
  double throughput = 0.0;  // completed items per wall-clock second
  double p50_latency = 0.0;
  double p95_latency = 0.0;
  std::vector<double> batch_wall_seconds;
};

Json to_json(const PoolMetrics& m);

// Fixed set of W execution units draining one batch at a time. submit_batch
// is the phase barrier: it returns once every item has finished, with results
// in the batch's item order regardless of completion order.
class ExecutionPool {
 public:
  explicit ExecutionPool(std::size_t workers);
  ~ExecutionPool();

  ExecutionPool(const ExecutionPool&) = delete;
  ExecutionPool& operator=(const ExecutionPool&) = delete;

  std::size_t workers() const noexcept { return threads_.size(); }

  // Throws BatchError if any item threw; successful results stay available
  // through BatchError::partial<T>().
  template <class T>
  std::vector<T> submit_batch(const WorkBatch<T>& batch);

  PoolMetrics metrics() const;
  void add_retries(std::uint64_t n);

 private:
  std::vector<std::exception_ptr> execute(std::size_t n, const std::function<void(std::size_t)>& task);
  void worker_loop(std::stop_token stop);
  static void check_canonical(const std::vector<std::size_t>& agents);

  mutable std::mutex mutex_;
  std::condition_variable_any work_cv_;
  std::condition_variable done_cv_;
  const std::function<void(std::size_t)>* task_ = nullptr;
  std::size_t batch_size_ = 0;
  std::size_t next_index_ = 0;
  std::size_t done_count_ = 0;
  std::uint64_t generation_ = 0;
  bool busy_ = false;
  std::size_t active_ = 0;
  std::vector<std::exception_ptr> errors_;
  std::vector<double> item_latency_;

  PoolMetrics metrics_;
  std::vector<double> latencies_;

  std::vector<std::jthread> threads_;
};

template <class T>
std::vector<T> ExecutionPool::submit_batch(const WorkBatch<T>& batch) {
  const std::size_t n = batch.items.size();
  if (n == 0) return {};
  {
    std::vector<std::size_t> agents;
    agents.reserve(n);
    for (const auto& item : batch.items) agents.push_back(item.agent);
    check_canonical(agents);
  }

  std::vector<std::optional<T>> slots(n);
  const std::function<void(std::size_t)> task = [&](std::size_t i) { slots[i].emplace(batch.items[i].run()); };
  auto errors = execute(n, task);

  std::vector<ItemFailure> failures;
  for (std::size_t i = 0; i < n; ++i) {
    if (!errors[i]) continue;
    std::string message = "unknown error";
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      message = e.what();
    } catch (...) {
    }
    failures.push_back(ItemFailure{i, batch.items[i].agent, std::move(message), errors[i]});
  }
  if (!failures.empty()) throw BatchError(std::move(failures), std::any(std::move(slots)));

  std::vector<T> results;
  results.reserve(n);
  for (auto& slot : slots) results.push_back(std::move(*slot));
  return results;
}

}  // namespace casevo
