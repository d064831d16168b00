#include "netinf/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "netinf/error.hpp"
#include "netinf/text.hpp"

namespace netinf {

DirectedGraph::DirectedGraph(std::uint32_t node_count, std::vector<Edge> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.from >= node_count_ || e.to >= node_count_)
      throw InvalidArgument("edge endpoint out of range: " + std::to_string(e.from) + "," +
                            std::to_string(e.to));
    if (e.from == e.to) throw InvalidArgument("self-loop on node " + std::to_string(e.from));
    if (i > 0 && edges_[i - 1] == e)
      throw InvalidArgument("duplicate edge " + std::to_string(e.from) + "," +
                            std::to_string(e.to));
  }
}

bool DirectedGraph::contains(Edge e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

DirectedGraph::Adjacency DirectedGraph::out_adjacency() const {
  Adjacency adj;
  adj.offsets.assign(static_cast<std::size_t>(node_count_) + 1, 0);
  adj.targets.reserve(edges_.size());
  for (const Edge& e : edges_) {
    ++adj.offsets[e.from + 1];
    adj.targets.push_back(e.to);
  }
  for (std::size_t u = 0; u < node_count_; ++u) adj.offsets[u + 1] += adj.offsets[u];
  return adj;
}

void write_graph(std::ostream& out, const DirectedGraph& graph) {
  out << "nodes:" << graph.node_count() << '\n';
  for (const Edge& e : graph.edges()) out << e.from << ',' << e.to << '\n';
}

DirectedGraph read_graph(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || !line.starts_with("nodes:"))
    throw ParseError(1, "expected header 'nodes:<N>'");
  std::uint64_t n = 0;
  if (!text::parse_uint(std::string_view(line).substr(6), n) || n > UINT32_MAX)
    throw ParseError(1, "bad node count");

  std::vector<Edge> edges;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    auto fields = text::split(line, ',');
    std::uint64_t u = 0, v = 0;
    if (fields.size() != 2 || !text::parse_uint(fields[0], u) || !text::parse_uint(fields[1], v))
      throw ParseError(lineno, "expected 'u,v'");
    if (u >= n || v >= n) throw ParseError(lineno, "node id out of range");
    if (u == v) throw ParseError(lineno, "self-loop");
    Edge e{static_cast<NodeId>(u), static_cast<NodeId>(v)};
    if (!edges.empty() && !(edges.back() < e))
      throw ParseError(lineno, "edges must be strictly ascending");
    edges.push_back(e);
  }
  return DirectedGraph(static_cast<std::uint32_t>(n), std::move(edges));
}

void save_graph(const std::string& path, const DirectedGraph& graph) {
  std::ostringstream out;
  write_graph(out, graph);
  text::write_file_atomic(path, out.str());
}

DirectedGraph load_graph(const std::string& path) {
  std::istringstream in(text::read_file(path));
  return read_graph(in);
}

}  // namespace netinf
