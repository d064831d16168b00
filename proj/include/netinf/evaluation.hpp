#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netinf/graph.hpp"
#include "netinf/inference.hpp"

namespace netinf::eval {

struct EvalReport {
  double precision = 1.0;
  double recall = 0.0;
  std::size_t true_edges = 0;
  std::size_t inferred_edges = 0;
  std::size_t intersection = 0;
};

/// Set comparison of directed edges. An empty inferred network has precision
/// 1.0 (no false positives). Throws InvalidArgument when truth has no edges.
EvalReport precision_recall(const InferredNetwork& inferred, const DirectedGraph& truth);

std::string format_report(const EvalReport& report);

struct CurvePoint {
  std::string dataset;
  std::size_t k = 0;
  std::size_t edges_found = 0;

  bool operator==(const CurvePoint&) const = default;
};

struct RunRecord {
  std::string dataset;
  std::size_t k = 0;
  InferredNetwork network;
};

/// One point per run, sorted by (dataset, k).
std::vector<CurvePoint> iteration_curve(const std::vector<RunRecord>& runs);

/// CSV `dataset,k,edges_found`.
std::string format_curve_csv(const std::vector<CurvePoint>& curve);

enum class ExportFormat { EdgeList, Dot };

/// "dot" or "edgelist"; anything else throws InvalidArgument.
ExportFormat parse_export_format(std::string_view name);

/// Renders the inferred edges. With a baseline, every inferred edge is black
/// and every baseline edge missing from `inferred` is added in red.
std::string export_graph(const InferredNetwork& inferred, const InferredNetwork* baseline,
                         ExportFormat format);

struct DegreeRow {
  NodeId node = 0;
  std::size_t in_degree = 0;
  std::size_t out_degree = 0;
};

/// In/out degree per node of the inferred network, by total degree
/// descending then node id.
std::vector<DegreeRow> degree_table(const InferredNetwork& inferred);

/// CSV `node,in_degree,out_degree`.
std::string format_degree_csv(const std::vector<DegreeRow>& rows);

}  // namespace netinf::eval
