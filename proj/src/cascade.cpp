#include "netinf/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_set>

#include "netinf/error.hpp"
#include "netinf/random.hpp"
#include "netinf/text.hpp"

namespace netinf {

namespace {

bool valid_contagion_id(const std::string& id) {
  return !id.empty() && id.find_first_of(";\r\n") == std::string::npos;
}

bool valid_label(const std::string& label) {
  return label.find_first_of("\r\n") == std::string::npos;
}

// Earliest-arrival SI spread over the edges whose keyed coin came up below
// beta. Edge draws depend only on (key, edge index).
Cascade spread(const DirectedGraph::Adjacency& adj, std::uint32_t node_count, NodeId root,
               double beta, double alpha, double horizon, std::uint64_t key) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> arrival(node_count, kInf);
  std::vector<bool> infected(node_count, false);
  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> frontier;

  Cascade cascade;
  cascade.alpha = alpha;
  arrival[root] = 0.0;
  frontier.push({0.0, root});
  while (!frontier.empty()) {
    auto [t, u] = frontier.top();
    frontier.pop();
    if (infected[u]) continue;
    if (t > horizon) break;
    infected[u] = true;
    cascade.events.push_back({u, t});
    for (std::size_t e = adj.offsets[u]; e < adj.offsets[u + 1]; ++e) {
      const NodeId v = adj.targets[e];
      if (infected[v]) continue;
      const std::uint64_t edge_key = derive_seed(key, e);
      if (!(keyed_uniform(edge_key, 0) < beta)) continue;
      double delay = 0.0;
      for (std::uint64_t draw = 1; !(delay > 0.0); ++draw)
        delay = exponential_from_uniform(keyed_uniform(edge_key, draw), alpha);
      const double candidate = t + delay;
      if (candidate < arrival[v]) {
        arrival[v] = candidate;
        frontier.push({candidate, v});
      }
    }
  }
  return cascade;
}

}  // namespace

std::size_t CascadeSet::transmissions() const {
  std::size_t total = 0;
  for (const auto& c : cascades) total += c.events.size();
  return total;
}

void validate(const Cascade& cascade) {
  if (!valid_contagion_id(cascade.contagion_id))
    throw InvalidArgument("invalid contagion id '" + cascade.contagion_id + "'");
  std::unordered_set<NodeId> seen;
  for (std::size_t i = 0; i < cascade.events.size(); ++i) {
    const Event& ev = cascade.events[i];
    if (!std::isfinite(ev.time) || ev.time < 0.0)
      throw InvalidArgument("cascade " + cascade.contagion_id + ": invalid time");
    if (i > 0 && ev.time < cascade.events[i - 1].time)
      throw InvalidArgument("cascade " + cascade.contagion_id + ": times not nondecreasing");
    if (!seen.insert(ev.node).second)
      throw InvalidArgument("cascade " + cascade.contagion_id + ": node " +
                            std::to_string(ev.node) + " repeated");
  }
}

void validate(const CascadeSet& set) {
  for (const auto& [id, label] : set.nodes)
    if (!valid_label(label)) throw InvalidArgument("invalid label for node " + std::to_string(id));
  std::unordered_set<std::string> ids;
  for (const Cascade& c : set.cascades) {
    validate(c);
    if (!ids.insert(c.contagion_id).second)
      throw InvalidArgument("duplicate contagion id " + c.contagion_id);
    for (const Event& ev : c.events)
      if (!set.nodes.contains(ev.node))
        throw InvalidArgument("cascade " + c.contagion_id + ": unknown node " +
                              std::to_string(ev.node));
  }
}

double coverage(const CascadeSet& set, std::size_t node_count) {
  if (node_count == 0) return 0.0;
  std::unordered_set<NodeId> covered;
  for (const Cascade& c : set.cascades)
    for (const Event& ev : c.events) covered.insert(ev.node);
  return static_cast<double>(covered.size()) / static_cast<double>(node_count);
}

void validate(const TransmissionModel& model) {
  if (!(model.beta > 0.0 && model.beta <= 1.0)) throw InvalidArgument("beta must be in (0,1]");
  if (!(model.alpha_min > 0.0 && model.alpha_min <= model.alpha_max) ||
      !std::isfinite(model.alpha_max))
    throw InvalidArgument("alpha range must satisfy 0 < alpha_min <= alpha_max");
  if (!(model.epsilon > 0.0 && model.epsilon < model.beta))
    throw InvalidArgument("epsilon must be in (0, beta)");
  if (!(model.horizon >= 0.0)) throw InvalidArgument("horizon must be nonnegative");
}

Cascade simulate_cascade(const DirectedGraph& graph, NodeId root, const TransmissionModel& model,
                         double alpha) {
  if (root >= graph.node_count()) throw InvalidArgument("root " + std::to_string(root) + " is not a node");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidArgument("alpha must be positive");
  if (!(model.beta >= 0.0 && model.beta <= 1.0)) throw InvalidArgument("beta must be in [0,1]");
  Cascade c = spread(graph.out_adjacency(), graph.node_count(), root, model.beta, alpha,
                     model.horizon, model.rng_seed);
  c.contagion_id = std::to_string(model.rng_seed);
  return c;
}

CascadeGeneration generate_cascade_set(const DirectedGraph& graph, const TransmissionModel& model,
                                       std::size_t count, double coverage_target,
                                       std::size_t retry_budget) {
  validate(model);
  if (count == 0) throw InvalidArgument("cascade count must be at least 1");
  if (!(coverage_target >= 0.0 && coverage_target <= 1.0))
    throw InvalidArgument("coverage target must be in [0,1]");
  const std::uint32_t n = graph.node_count();
  if (n == 0) throw InvalidArgument("graph has no nodes");

  const auto adj = graph.out_adjacency();
  auto simulate_slot = [&](std::uint64_t stream, std::optional<NodeId> root) {
    Rng rng(derive_seed(model.rng_seed, stream));
    const NodeId r = root ? *root : static_cast<NodeId>(rng.below(n));
    const double alpha = rng.uniform(model.alpha_min, model.alpha_max);
    const std::uint64_t key = rng.next();
    return spread(adj, n, r, model.beta, alpha, model.horizon, key);
  };

  CascadeGeneration out;
  for (NodeId v = 0; v < n; ++v) out.set.nodes.emplace(v, std::to_string(v));
  out.set.cascades.reserve(count);
  std::vector<std::size_t> hits(n, 0);
  std::size_t covered = 0;
  for (std::size_t i = 0; i < count; ++i) {
    Cascade c = simulate_slot(i, std::nullopt);
    c.contagion_id = std::to_string(i);
    for (const Event& ev : c.events)
      if (hits[ev.node]++ == 0) ++covered;
    out.set.cascades.push_back(std::move(c));
  }

  const std::size_t budget = retry_budget ? retry_budget : 10 * count;
  const auto needed = static_cast<std::size_t>(std::ceil(coverage_target * n - 1e-9));
  while (covered < needed && out.attempts < budget) {
    // Prefer a single-event cascade whose root is also covered elsewhere.
    std::size_t slot = count;
    for (std::size_t i = 0; i < count; ++i) {
      const auto& events = out.set.cascades[i].events;
      if (events.size() != 1) continue;
      if (slot == count) slot = i;
      if (hits[events.front().node] > 1) {
        slot = i;
        break;
      }
    }
    if (slot == count) break;

    std::vector<NodeId> uncovered;
    for (NodeId v = 0; v < n; ++v)
      if (hits[v] == 0) uncovered.push_back(v);
    const std::uint64_t stream = count + out.attempts++;
    Rng pick(derive_seed(model.rng_seed ^ 0x5bd1e995ULL, stream));
    const NodeId root = uncovered[pick.below(uncovered.size())];
    Cascade replacement = simulate_slot(stream, root);

    Cascade& old = out.set.cascades[slot];
    const NodeId old_root = old.events.front().node;
    std::size_t gained = 0;
    bool keeps_old_root = false;
    for (const Event& ev : replacement.events) {
      if (hits[ev.node] == 0) ++gained;
      if (ev.node == old_root) keeps_old_root = true;
    }
    const std::size_t lost = (hits[old_root] == 1 && !keeps_old_root) ? 1 : 0;
    if (gained <= lost) continue;

    if (--hits[old_root] == 0) --covered;
    for (const Event& ev : replacement.events)
      if (hits[ev.node]++ == 0) ++covered;
    replacement.contagion_id = old.contagion_id;
    old = std::move(replacement);
    ++out.replacements;
  }

  out.coverage = static_cast<double>(covered) / n;
  out.coverage_met = covered >= needed;
  return out;
}

void write_cascades(std::ostream& out, const CascadeSet& set) {
  validate(set);
  for (const auto& [id, label] : set.nodes) out << id << ',' << label << '\n';
  out << '\n';
  for (const Cascade& c : set.cascades) {
    out << c.contagion_id;
    for (const Event& ev : c.events) out << ';' << ev.node << ',' << text::format_double(ev.time);
    out << '\n';
  }
}

CascadeSet read_cascades(std::istream& in) {
  CascadeSet set;
  std::string line;
  std::size_t lineno = 0;
  bool separator = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) {
      separator = true;
      break;
    }
    const auto comma = line.find(',');
    std::uint64_t id = 0;
    if (comma == std::string::npos ||
        !text::parse_uint(std::string_view(line).substr(0, comma), id) || id > UINT32_MAX)
      throw ParseError(lineno, "expected '<id>,<label>' node line");
    if (!set.nodes.emplace(static_cast<NodeId>(id), line.substr(comma + 1)).second)
      throw ParseError(lineno, "node " + std::to_string(id) + " declared twice");
  }
  if (!separator) throw ParseError(lineno + 1, "missing blank line after node header");

  std::unordered_set<std::string> ids;
  while (std::getline(in, line)) {
    ++lineno;
    const auto fields = text::split(line, ';');
    Cascade c;
    c.contagion_id = std::string(fields[0]);
    if (c.contagion_id.empty()) throw ParseError(lineno, "empty contagion id");
    if (!ids.insert(c.contagion_id).second)
      throw ParseError(lineno, "duplicate contagion id " + c.contagion_id);
    std::unordered_set<NodeId> seen;
    for (std::size_t f = 1; f < fields.size(); ++f) {
      const auto parts = text::split(fields[f], ',');
      std::uint64_t node = 0;
      double time = 0.0;
      if (parts.size() != 2 || !text::parse_uint(parts[0], node) ||
          !text::parse_double(parts[1], time))
        throw ParseError(lineno, "expected '<node>,<time>' in field " + std::to_string(f));
      if (!std::isfinite(time) || time < 0.0) throw ParseError(lineno, "invalid time");
      if (node > UINT32_MAX || !set.nodes.contains(static_cast<NodeId>(node)))
        throw ParseError(lineno, "unknown node " + std::to_string(node));
      if (!seen.insert(static_cast<NodeId>(node)).second)
        throw ParseError(lineno, "node " + std::to_string(node) + " appears twice in cascade");
      if (!c.events.empty() && time < c.events.back().time)
        throw ParseError(lineno, "times decrease within cascade");
      c.events.push_back({static_cast<NodeId>(node), time});
    }
    set.cascades.push_back(std::move(c));
  }
  return set;
}

void save_cascades(const std::string& path, const CascadeSet& set) {
  std::ostringstream out;
  write_cascades(out, set);
  text::write_file_atomic(path, out.str());
}

CascadeSet load_cascades(const std::string& path) {
  std::istringstream in(text::read_file(path));
  return read_cascades(in);
}

}  // namespace netinf
