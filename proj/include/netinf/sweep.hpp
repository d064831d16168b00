#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "netinf/inference.hpp"

namespace netinf::sweep {

/// One (dataset, k) cell of an experiment matrix.
struct ExperimentTask {
  std::string dataset_path;
  /// Dataset file name without its extension.
  std::string label;
  std::size_t k = 0;
  InferenceConfig config;
  /// `<out_dir>/<label>.k<k>.edges`
  std::string output_path;

  std::string id() const { return label + ".k" + std::to_string(k); }
};

/// Cross product of datasets and ks ordered by (dataset path, k). Throws
/// InvalidArgument on empty inputs, k == 0, or two tasks mapping to the same
/// output path.
std::vector<ExperimentTask> build_matrix(const std::vector<std::string>& datasets,
                                         const std::vector<std::size_t>& ks,
                                         const InferenceConfig& config,
                                         const std::string& out_dir);

/// Declared peak memory of a task: base_bytes + bytes_per_transmission * T,
/// where T is the number of (node, time) events in the dataset.
struct MemoryModel {
  std::uint64_t base_bytes = 64ULL << 20;
  std::uint64_t bytes_per_transmission = 4096;
};

std::uint64_t estimate_memory(const ExperimentTask& task, const MemoryModel& model);

struct TaskResult {
  bool saturated = false;
};

/// Runs inference for the task and commits the edge list atomically.
TaskResult run_task(const ExperimentTask& task);

struct SweepEvent {
  std::int64_t timestamp_ms = 0;
  /// start, done, fail or skip.
  std::string event;
  std::string task_id;
  std::string detail;
  std::size_t worker = 0;
  /// Tasks still waiting in the queue right after this event.
  std::size_t pending = 0;
};

/// `timestamp,event,task_id,detail`
std::string format_event(const SweepEvent& event);

struct SweepOptions {
  std::size_t workers = 1;
  /// Skip tasks whose output already exists and parses.
  bool resume = false;
  /// Sum of declared estimates of running tasks stays within this cap; a task
  /// larger than the cap runs alone.
  std::optional<std::uint64_t> memory_cap;
  MemoryModel memory_model;
  /// Receives each formatted log line as it happens (serialized).
  std::ostream* log = nullptr;
  /// Replaces run_task; used by tests.
  std::function<TaskResult(const ExperimentTask&)> execute;
};

struct CompletedTask {
  ExperimentTask task;
  double wall_seconds = 0.0;
  bool saturated = false;
  bool skipped = false;
};

struct FailedTask {
  ExperimentTask task;
  std::string error;
};

struct SweepResult {
  /// Both lists are in task order.
  std::vector<CompletedTask> completed;
  std::vector<FailedTask> failed;
  std::vector<SweepEvent> events;
};

/// Runs tasks on a pool of `workers` threads pulling from one shared queue.
/// Task failures are recorded and never stop the sweep.
SweepResult dispatch(const std::vector<ExperimentTask>& tasks, const SweepOptions& options);

}  // namespace netinf::sweep
