#include "casevo/exec/execution_pool.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace casevo {

namespace {

// Nearest-rank percentile over a sorted sample.
double percentile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size())));
  return sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1];
}

}  // namespace

BatchError::BatchError(std::vector<ItemFailure> failures, std::any partial)
    : Error(std::to_string(failures.size()) + " work item(s) failed; first: " +
            (failures.empty() ? std::string("?") : failures.front().message)),
      failures_(std::move(failures)),
      partial_(std::move(partial)) {}

Json to_json(const PoolMetrics& m) {
  Json j = Json::object();
  j["workers"] = m.workers;
  j["batches"] = m.batches;
  j["submitted"] = m.submitted;
  j["completed"] = m.completed;
  j["failed"] = m.failed;
  j["retried"] = m.retried;
  j["peak_concurrency"] = m.peak_concurrency;
  j["wall_seconds"] = m.wall_seconds;
  j["throughput_items_per_s"] = m.throughput;
  j["p50_latency_s"] = m.p50_latency;
  j["p95_latency_s"] = m.p95_latency;
  return j;
}

ExecutionPool::ExecutionPool(std::size_t workers) {
  if (workers == 0) throw std::invalid_argument("ExecutionPool needs at least one worker");
  metrics_.workers = workers;
  threads_.reserve(workers);
  for (std::size_t i = 0; i < workers; ++i) {
    threads_.emplace_back([this](std::stop_token st) { worker_loop(st); });
  }
}

ExecutionPool::~ExecutionPool() {
  for (auto& t : threads_) t.request_stop();
  work_cv_.notify_all();
  threads_.clear();
}

void ExecutionPool::check_canonical(const std::vector<std::size_t>& agents) {
  for (std::size_t i = 1; i < agents.size(); ++i) {
    if (agents[i] <= agents[i - 1]) {
      throw std::invalid_argument("work batch items must be in ascending agent order");
    }
  }
}

void ExecutionPool::add_retries(std::uint64_t n) {
  std::lock_guard lock(mutex_);
  metrics_.retried += n;
}

std::vector<std::exception_ptr> ExecutionPool::execute(std::size_t n,
                                                       const std::function<void(std::size_t)>& task) {
  const auto start = std::chrono::steady_clock::now();
  std::unique_lock lock(mutex_);
  if (busy_) throw std::logic_error("ExecutionPool: previous batch still in flight");
  busy_ = true;
  task_ = &task;
  batch_size_ = n;
  next_index_ = 0;
  done_count_ = 0;
  errors_.assign(n, nullptr);
  item_latency_.assign(n, 0.0);
  ++generation_;
  work_cv_.notify_all();
  done_cv_.wait(lock, [&] { return done_count_ == batch_size_; });

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  auto errors = std::move(errors_);
  std::size_t failed = 0;
  for (const auto& e : errors) failed += e ? 1 : 0;

  metrics_.batches += 1;
  metrics_.submitted += n;
  metrics_.failed += failed;
  metrics_.completed += n - failed;
  metrics_.wall_seconds += wall;
  metrics_.batch_wall_seconds.push_back(wall);
  latencies_.insert(latencies_.end(), item_latency_.begin(), item_latency_.end());

  task_ = nullptr;
  batch_size_ = 0;
  busy_ = false;
  return errors;
}

void ExecutionPool::worker_loop(std::stop_token stop) {
  std::uint64_t seen = 0;
  std::unique_lock lock(mutex_);
  while (true) {
    work_cv_.wait(lock, stop, [&] { return generation_ != seen && next_index_ < batch_size_; });
    if (stop.stop_requested()) return;
    seen = generation_;
    while (next_index_ < batch_size_) {
      const std::size_t i = next_index_++;
      const auto* task = task_;
      ++active_;
      metrics_.peak_concurrency = std::max(metrics_.peak_concurrency, active_);
      lock.unlock();

      const auto t0 = std::chrono::steady_clock::now();
      std::exception_ptr error;
      try {
        (*task)(i);
      } catch (...) {
        error = std::current_exception();
      }
      const double latency = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

      lock.lock();
      --active_;
      errors_[i] = error;
      item_latency_[i] = latency;
      if (++done_count_ == batch_size_) done_cv_.notify_one();
    }
  }
}

PoolMetrics ExecutionPool::metrics() const {
  std::lock_guard lock(mutex_);
  PoolMetrics m = metrics_;
  auto sorted = latencies_;
  std::sort(sorted.begin(), sorted.end());
  m.p50_latency = percentile(sorted, 0.50);
  m.p95_latency = percentile(sorted, 0.95);
  m.throughput = m.wall_seconds > 0.0 ? static_cast<double>(m.completed) / m.wall_seconds : 0.0;
  return m;
}

}  // namespace casevo
