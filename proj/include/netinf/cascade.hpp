#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "netinf/graph.hpp"

namespace netinf {

struct Event {
  NodeId node = 0;
  double time = 0.0;

  bool operator==(const Event&) const = default;
};

/// One contagion: the nodes it reached and when, in nondecreasing time order,
/// each node at most once. `alpha` is the rate the simulator used; it is
/// never serialized and never read by inference.
struct Cascade {
  std::string contagion_id;
  std::vector<Event> events;
  std::optional<double> alpha;

  bool operator==(const Cascade&) const = default;
};

struct CascadeSet {
  /// Node universe: id -> label.
  std::map<NodeId, std::string> nodes;
  std::vector<Cascade> cascades;

  std::size_t transmissions() const;
  bool operator==(const CascadeSet&) const = default;
};

/// Throws InvalidArgument naming the first violated invariant (time order,
/// repeated node, node outside the universe, duplicate or malformed id).
void validate(const Cascade& cascade);
void validate(const CascadeSet& set);

/// Fraction of `node_count` nodes that appear in at least one cascade.
double coverage(const CascadeSet& set, std::size_t node_count);

struct TransmissionModel {
  double beta = 0.5;
  double alpha_min = 0.1;
  double alpha_max = 10.0;
  /// Background rate; only inference uses it.
  double epsilon = 1e-9;
  /// Events later than this are not observed.
  double horizon = std::numeric_limits<double>::infinity();
  std::uint64_t rng_seed = 0;
};

void validate(const TransmissionModel& model);

/// SI contagion from `root` at time 0. Every out-edge (u, v) of an infected
/// node fires independently with probability beta after an exponential delay
/// of mean `alpha`; v takes the earliest arrival. The contagion id is the
/// decimal seed. Random draws are keyed by
/// (model.rng_seed, edge index), so runs with the same seed share the same
/// per-edge coin flips and delays whatever beta is.
Cascade simulate_cascade(const DirectedGraph& graph, NodeId root, const TransmissionModel& model,
                         double alpha);

struct CascadeGeneration {
  CascadeSet set;
  double coverage = 0.0;
  bool coverage_met = false;
  std::size_t replacements = 0;
  std::size_t attempts = 0;
};

/// `count` cascades with uniform roots and alphas uniform in the model's
/// range. When node coverage falls short of `coverage_target`, single-event
/// cascades are re-rooted at uncovered nodes, at most `retry_budget`
/// attempts (0 means 10 * count).
CascadeGeneration generate_cascade_set(const DirectedGraph& graph, const TransmissionModel& model,
                                       std::size_t count, double coverage_target,
                                       std::size_t retry_budget = 0);

/// Cascade file: one `<id>,<label>` line per node, a blank line, then one
/// `<contagion_id>;<node>,<time>;...` line per cascade. Times use the
/// shortest decimal form that reads back to the same double.
void write_cascades(std::ostream& out, const CascadeSet& set);
CascadeSet read_cascades(std::istream& in);

void save_cascades(const std::string& path, const CascadeSet& set);
CascadeSet load_cascades(const std::string& path);

}  // namespace netinf
