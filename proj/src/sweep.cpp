#include "netinf/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <filesystem>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <thread>

#include "netinf/cascade.hpp"
#include "netinf/error.hpp"
#include "netinf/text.hpp"

namespace netinf::sweep {

namespace fs = std::filesystem;

std::vector<ExperimentTask> build_matrix(const std::vector<std::string>& datasets,
                                         const std::vector<std::size_t>& ks,
                                         const InferenceConfig& config,
                                         const std::string& out_dir) {
  if (datasets.empty()) throw InvalidArgument("no datasets given");
  if (ks.empty()) throw InvalidArgument("no iteration counts given");
  for (std::size_t k : ks)
    if (k == 0) throw InvalidArgument("iteration counts must be at least 1");

  std::vector<std::string> sorted_datasets = datasets;
  std::sort(sorted_datasets.begin(), sorted_datasets.end());
  std::vector<std::size_t> sorted_ks = ks;
  std::sort(sorted_ks.begin(), sorted_ks.end());

  std::vector<ExperimentTask> tasks;
  std::set<std::string> outputs;
  for (const auto& path : sorted_datasets) {
    const std::string label = fs::path(path).stem().string();
    for (std::size_t k : sorted_ks) {
      ExperimentTask t;
      t.dataset_path = path;
      t.label = label;
      t.k = k;
      t.config = config;
      t.config.k = k;
      t.output_path = (fs::path(out_dir) / (label + ".k" + std::to_string(k) + ".edges")).string();
      if (!outputs.insert(t.output_path).second)
        throw InvalidArgument("output path collision: " + t.output_path);
      tasks.push_back(std::move(t));
    }
  }
  return tasks;
}

std::uint64_t estimate_memory(const ExperimentTask& task, const MemoryModel& model) {
  const std::string doc = text::read_file(task.dataset_path);
  const auto body = doc.find("\n\n");
  const std::uint64_t transmissions =
      body == std::string::npos ? 0 : std::count(doc.begin() + body, doc.end(), ';');
  return model.base_bytes + model.bytes_per_transmission * transmissions;
}

TaskResult run_task(const ExperimentTask& task) {
  const CascadeSet set = load_cascades(task.dataset_path);
  const InferredNetwork network = infer(set, task.config);
  save_inferred(task.output_path, network, task.config);
  return {network.saturated};
}

std::string format_event(const SweepEvent& event) {
  std::string detail = event.detail;
  std::replace(detail.begin(), detail.end(), '\n', ' ');
  return std::to_string(event.timestamp_ms) + ',' + event.event + ',' + event.task_id + ',' + detail;
}

namespace {

std::int64_t now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

bool has_valid_output(const ExperimentTask& task, bool& saturated) {
  std::error_code ec;
  if (!fs::is_regular_file(task.output_path, ec)) return false;
  try {
    const auto file = load_inferred(task.output_path);
    if (file.config.k != task.k) return false;
    saturated = file.network.saturated;
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

SweepResult dispatch(const std::vector<ExperimentTask>& tasks, const SweepOptions& options) {
  if (options.workers == 0) throw InvalidArgument("worker count must be at least 1");
  SweepResult result;
  if (tasks.empty()) return result;

  std::vector<std::uint64_t> estimate(tasks.size(), 0);
  if (options.memory_cap) {
    std::map<std::string, std::uint64_t> by_dataset;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      auto it = by_dataset.find(tasks[i].dataset_path);
      if (it == by_dataset.end()) {
        std::uint64_t bytes = options.memory_model.base_bytes;
        try {
          bytes = estimate_memory(tasks[i], options.memory_model);
        } catch (const std::exception&) {
          // unreadable dataset: the task itself will fail and report why
        }
        it = by_dataset.emplace(tasks[i].dataset_path, bytes).first;
      }
      estimate[i] = it->second;
    }
  }

  std::mutex mutex;
  std::condition_variable ready;
  std::deque<std::size_t> pending;
  for (std::size_t i = 0; i < tasks.size(); ++i) pending.push_back(i);
  std::uint64_t in_flight = 0;
  std::size_t running = 0;
  std::vector<std::optional<CompletedTask>> completed(tasks.size());
  std::vector<std::optional<FailedTask>> failed(tasks.size());

  auto record = [&](SweepEvent ev) {
    ev.timestamp_ms = now_ms();
    ev.pending = pending.size();
    if (options.log) *options.log << format_event(ev) << '\n' << std::flush;
    result.events.push_back(std::move(ev));
  };

  auto claim = [&](std::unique_lock<std::mutex>& lock) -> std::optional<std::size_t> {
    while (true) {
      if (pending.empty()) return std::nullopt;
      for (auto it = pending.begin(); it != pending.end(); ++it) {
        const bool fits = !options.memory_cap || running == 0 ||
                          in_flight + estimate[*it] <= *options.memory_cap;
        if (fits) {
          const std::size_t idx = *it;
          pending.erase(it);
          in_flight += estimate[idx];
          ++running;
          return idx;
        }
      }
      ready.wait(lock);
    }
  };

  auto worker = [&](std::size_t id) {
    const auto execute = options.execute ? options.execute : run_task;
    std::unique_lock lock(mutex);
    while (auto idx = claim(lock)) {
      const ExperimentTask& task = tasks[*idx];
      bool saturated = false;
      bool skip = false;
      if (options.resume) {
        lock.unlock();
        skip = has_valid_output(task, saturated);
        lock.lock();
      }
      if (skip) {
        completed[*idx] = CompletedTask{task, 0.0, saturated, true};
        in_flight -= estimate[*idx];
        --running;
        record({0, "skip", task.id(), "existing output", id, 0});
        ready.notify_all();
        continue;
      }
      record({0, "start", task.id(), "worker=" + std::to_string(id), id, 0});
      lock.unlock();

      const auto t0 = std::chrono::steady_clock::now();
      std::optional<TaskResult> outcome;
      std::string error;
      try {
        outcome = execute(task);
      } catch (const std::exception& e) {
        error = e.what();
      } catch (...) {
        error = "unknown error";
      }
      const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

      lock.lock();
      in_flight -= estimate[*idx];
      --running;
      if (outcome) {
        completed[*idx] = CompletedTask{task, wall, outcome->saturated, false};
        record({0, "done", task.id(),
                "wall=" + text::format_fixed(wall, 3) + "s saturated=" +
                    (outcome->saturated ? "true" : "false") + " worker=" + std::to_string(id),
                id, 0});
      } else {
        failed[*idx] = FailedTask{task, error};
        record({0, "fail", task.id(), error, id, 0});
      }
      ready.notify_all();
    }
    ready.notify_all();
  };

  {
    std::vector<std::jthread> pool;
    const std::size_t n = std::min(options.workers, tasks.size());
    pool.reserve(n);
    for (std::size_t w = 0; w < n; ++w) pool.emplace_back(worker, w);
  }

  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (completed[i]) result.completed.push_back(std::move(*completed[i]));
    if (failed[i]) result.failed.push_back(std::move(*failed[i]));
  }
  return result;
}

}  // namespace netinf::sweep
