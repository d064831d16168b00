#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "netinf/cascade.hpp"
#include "netinf/graph.hpp"

namespace netinf {

// Model: in each cascade every infected node is explained by exactly one
// parent, either an earlier node u over a selected edge (u, v), scoring
//   ln(beta) - (t_v - t_u) / alpha,
// or the background source, scoring ln(epsilon). The objective of an edge set
// is the sum over cascades and infected nodes of the best available parent
// score. It is monotone and submodular in the edge set, so greedy selection
// can be driven lazily from a max-heap of stale upper bounds.

struct InferenceConfig {
  /// Maximum number of edges to select (greedy iterations).
  std::size_t k = 0;
  double alpha = 1.0;
  double beta = 0.5;
  double epsilon = 1e-9;
  /// A best gain at or below this value ends the run as saturated.
  double gain_tolerance = 0.0;
};

void validate(const InferenceConfig& config);

/// Log-weight of u transmitting to v; -infinity when t_v <= t_u.
double edge_log_weight(double t_u, double t_v, const InferenceConfig& config);

struct EdgeCandidate {
  Edge edge;
  double cached_gain = 0.0;
  /// Iteration at which cached_gain was last computed.
  std::size_t stamp = 0;
};

/// Best parent score for every (cascade, event) pair under some edge set,
/// indexed by cascade position then event position.
class ParentWeights {
 public:
  /// Everything explained by the background source.
  static ParentWeights initial(const CascadeSet& set, const InferenceConfig& config);

  double at(std::size_t cascade, std::size_t event) const { return best_[cascade][event]; }

  /// Adds `edge` to the explaining set.
  void apply(Edge edge, const CascadeSet& set, const InferenceConfig& config);

  /// Sum of all entries, accumulated in (cascade, event) order.
  double objective() const;

 private:
  friend class CandidateIndex;
  std::vector<std::vector<double>> best_;
};

/// Every ordered pair (u, v) with t_u < t_v in some cascade, sorted by edge,
/// with cached_gain set to the gain against the empty edge set.
std::vector<EdgeCandidate> build_candidates(const CascadeSet& set, const InferenceConfig& config);

/// Improvement in the objective from adding `edge` given the current parent
/// weights. Summed in cascade order.
double marginal_gain(Edge edge, const CascadeSet& set, const ParentWeights& current,
                     const InferenceConfig& config);

struct Selection {
  Edge edge;
  double gain = 0.0;
  /// 1-based greedy iteration.
  std::size_t iteration = 0;

  bool operator==(const Selection&) const = default;
};

struct InferredNetwork {
  std::vector<Selection> selections;
  /// Stopped before k because no candidate had gain above the tolerance.
  bool saturated = false;

  std::vector<Edge> edges() const;
  bool operator==(const InferredNetwork&) const = default;
};

/// Lazy greedy selection of up to config.k edges. Ties in gain go to the
/// lexicographically smallest edge.
InferredNetwork infer(const CascadeSet& set, const InferenceConfig& config);

/// Same selection rule as infer() but recomputes every candidate's gain on
/// every iteration. Quadratic; intended for checking infer().
InferredNetwork infer_naive(const CascadeSet& set, const InferenceConfig& config);

/// Edge-list output:
///   # k=<k> alpha=<a> beta=<b> epsilon=<e>
///   <iteration>,<u>,<v>,<gain with 9 decimals>
///   # saturated=<true|false>
void write_inferred(std::ostream& out, const InferredNetwork& network,
                    const InferenceConfig& config);

struct InferredFile {
  InferenceConfig config;
  InferredNetwork network;
};
InferredFile read_inferred(std::istream& in);

void save_inferred(const std::string& path, const InferredNetwork& network,
                   const InferenceConfig& config);
InferredFile load_inferred(const std::string& path);

}  // namespace netinf
