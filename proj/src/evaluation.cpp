#include "netinf/evaluation.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "netinf/error.hpp"
#include "netinf/text.hpp"

namespace netinf::eval {

EvalReport precision_recall(const InferredNetwork& inferred, const DirectedGraph& truth) {
  if (truth.edge_count() == 0) throw InvalidArgument("truth graph has no edges; recall undefined");
  const auto edges = inferred.edges();
  const std::set<Edge> unique(edges.begin(), edges.end());
  EvalReport r;
  r.true_edges = truth.edge_count();
  r.inferred_edges = unique.size();
  for (const Edge& e : unique)
    if (truth.contains(e)) ++r.intersection;
  r.precision = r.inferred_edges == 0
                    ? 1.0
                    : static_cast<double>(r.intersection) / static_cast<double>(r.inferred_edges);
  r.recall = static_cast<double>(r.intersection) / static_cast<double>(r.true_edges);
  return r;
}

std::string format_report(const EvalReport& report) {
  std::ostringstream out;
  out << "# precision is 1.0 when no edges were inferred\n"
      << "precision=" << text::format_fixed(report.precision, 6) << '\n'
      << "recall=" << text::format_fixed(report.recall, 6) << '\n'
      << "true_edges=" << report.true_edges << '\n'
      << "inferred_edges=" << report.inferred_edges << '\n'
      << "intersection=" << report.intersection << '\n';
  return out.str();
}

std::vector<CurvePoint> iteration_curve(const std::vector<RunRecord>& runs) {
  std::vector<CurvePoint> curve;
  curve.reserve(runs.size());
  for (const auto& run : runs) curve.push_back({run.dataset, run.k, run.network.selections.size()});
  std::stable_sort(curve.begin(), curve.end(), [](const CurvePoint& a, const CurvePoint& b) {
    return a.dataset != b.dataset ? a.dataset < b.dataset : a.k < b.k;
  });
  return curve;
}

std::string format_curve_csv(const std::vector<CurvePoint>& curve) {
  std::ostringstream out;
  out << "dataset,k,edges_found\n";
  for (const auto& p : curve) out << p.dataset << ',' << p.k << ',' << p.edges_found << '\n';
  return out.str();
}

ExportFormat parse_export_format(std::string_view name) {
  if (name == "dot") return ExportFormat::Dot;
  if (name == "edgelist") return ExportFormat::EdgeList;
  throw InvalidArgument("unknown export format '" + std::string(name) + "' (expected dot or edgelist)");
}

std::string export_graph(const InferredNetwork& inferred, const InferredNetwork* baseline,
                         ExportFormat format) {
  const auto edges = inferred.edges();
  std::vector<Edge> missing;
  if (baseline) {
    const std::set<Edge> present(edges.begin(), edges.end());
    std::set<Edge> emitted;
    for (const Edge& e : baseline->edges())
      if (!present.contains(e) && emitted.insert(e).second) missing.push_back(e);
  }

  std::ostringstream out;
  if (format == ExportFormat::Dot) {
    out << "digraph G {\n";
    for (const Edge& e : edges) {
      out << "  " << e.from << " -> " << e.to;
      if (baseline) out << " [color=black]";
      out << ";\n";
    }
    for (const Edge& e : missing) out << "  " << e.from << " -> " << e.to << " [color=red];\n";
    out << "}\n";
  } else {
    for (const Edge& e : edges) {
      out << e.from << ',' << e.to;
      if (baseline) out << ",black";
      out << '\n';
    }
    for (const Edge& e : missing) out << e.from << ',' << e.to << ",red\n";
  }
  return out.str();
}

std::vector<DegreeRow> degree_table(const InferredNetwork& inferred) {
  std::map<NodeId, DegreeRow> rows;
  for (const Edge& e : inferred.edges()) {
    auto& from = rows[e.from];
    from.node = e.from;
    ++from.out_degree;
    auto& to = rows[e.to];
    to.node = e.to;
    ++to.in_degree;
  }
  std::vector<DegreeRow> table;
  table.reserve(rows.size());
  for (const auto& [node, row] : rows) table.push_back(row);
  std::stable_sort(table.begin(), table.end(), [](const DegreeRow& a, const DegreeRow& b) {
    return a.in_degree + a.out_degree > b.in_degree + b.out_degree;
  });
  return table;
}

std::string format_degree_csv(const std::vector<DegreeRow>& rows) {
  std::ostringstream out;
  out << "node,in_degree,out_degree\n";
  for (const auto& r : rows) out << r.node << ',' << r.in_degree << ',' << r.out_degree << '\n';
  return out.str();
}

}  // namespace netinf::eval
