#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace netinf {

using NodeId = std::uint32_t;

struct Edge {
  NodeId from = 0;
  NodeId to = 0;

  auto operator<=>(const Edge&) const = default;
};

/// Directed simple graph over nodes [0, node_count). Edges are kept sorted by
/// (from, to); self-loops and duplicates are rejected at construction.
class DirectedGraph {
 public:
  DirectedGraph() = default;
  explicit DirectedGraph(std::uint32_t node_count) : node_count_(node_count) {}
  DirectedGraph(std::uint32_t node_count, std::vector<Edge> edges);

  std::uint32_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  bool contains(Edge e) const;

  /// Out-neighbour lists in compressed form: targets of node u are
  /// targets[offsets[u] .. offsets[u+1]), ascending. Edge index i of the
  /// sorted edge list is position i of `targets`.
  struct Adjacency {
    std::vector<std::size_t> offsets;
    std::vector<NodeId> targets;
  };
  Adjacency out_adjacency() const;

  bool operator==(const DirectedGraph&) const = default;

 private:
  std::uint32_t node_count_ = 0;
  std::vector<Edge> edges_;
};

/// Graph file: `nodes:<N>` header then one `u,v` line per edge in ascending
/// (u, v) order; LF line endings.
void write_graph(std::ostream& out, const DirectedGraph& graph);
DirectedGraph read_graph(std::istream& in);

void save_graph(const std::string& path, const DirectedGraph& graph);
DirectedGraph load_graph(const std::string& path);

}  // namespace netinf
