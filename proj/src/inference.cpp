#include "netinf/inference.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>
#include <sstream>

#include "netinf/error.hpp"
#include "netinf/text.hpp"

namespace netinf {

namespace {

std::uint64_t edge_key(NodeId u, NodeId v) { return (std::uint64_t{u} << 32) | v; }

Edge key_edge(std::uint64_t key) {
  return {static_cast<NodeId>(key >> 32), static_cast<NodeId>(key & 0xffffffffULL)};
}

// Position of `node` in a cascade, or npos.
std::size_t find_event(const Cascade& c, NodeId node) {
  for (std::size_t i = 0; i < c.events.size(); ++i)
    if (c.events[i].node == node) return i;
  return static_cast<std::size_t>(-1);
}

}  // namespace

void validate(const InferenceConfig& config) {
  if (!(config.alpha > 0.0) || !std::isfinite(config.alpha))
    throw InvalidArgument("alpha must be positive");
  if (!(config.beta > 0.0 && config.beta <= 1.0)) throw InvalidArgument("beta must be in (0,1]");
  if (!(config.epsilon > 0.0 && config.epsilon < config.beta))
    throw InvalidArgument("epsilon must be in (0, beta)");
  if (!(config.gain_tolerance >= 0.0)) throw InvalidArgument("gain tolerance must be >= 0");
}

double edge_log_weight(double t_u, double t_v, const InferenceConfig& config) {
  if (!(t_v > t_u)) return -std::numeric_limits<double>::infinity();
  return std::log(config.beta) - (t_v - t_u) / config.alpha;
}

ParentWeights ParentWeights::initial(const CascadeSet& set, const InferenceConfig& config) {
  ParentWeights pw;
  const double background = std::log(config.epsilon);
  pw.best_.reserve(set.cascades.size());
  for (const Cascade& c : set.cascades) pw.best_.emplace_back(c.events.size(), background);
  return pw;
}

void ParentWeights::apply(Edge edge, const CascadeSet& set, const InferenceConfig& config) {
  for (std::size_t ci = 0; ci < set.cascades.size(); ++ci) {
    const Cascade& c = set.cascades[ci];
    const auto pu = find_event(c, edge.from);
    const auto pv = find_event(c, edge.to);
    if (pu >= c.events.size() || pv >= c.events.size()) continue;
    const double w = edge_log_weight(c.events[pu].time, c.events[pv].time, config);
    best_[ci][pv] = std::max(best_[ci][pv], w);
  }
}

double ParentWeights::objective() const {
  double total = 0.0;
  for (const auto& row : best_)
    for (double w : row) total += w;
  return total;
}

double marginal_gain(Edge edge, const CascadeSet& set, const ParentWeights& current,
                     const InferenceConfig& config) {
  double gain = 0.0;
  for (std::size_t ci = 0; ci < set.cascades.size(); ++ci) {
    const Cascade& c = set.cascades[ci];
    const auto pu = find_event(c, edge.from);
    const auto pv = find_event(c, edge.to);
    if (pu >= c.events.size() || pv >= c.events.size()) continue;
    const double w = edge_log_weight(c.events[pu].time, c.events[pv].time, config);
    const double b = current.at(ci, pv);
    if (w > b) gain += w - b;
  }
  return gain;
}

// Candidate edges with, for each, the cascades in which it can explain its
// target: (cascade, target position, log-weight), in cascade order.
// Occurrences whose weight cannot beat the background score are omitted since
// they never contribute gain.
class CandidateIndex {
 public:
  struct Occurrence {
    std::uint32_t cascade;
    std::uint32_t target;
    double weight;
  };

  CandidateIndex(const CascadeSet& set, const InferenceConfig& config) {
    const double background = std::log(config.epsilon);
    struct Pair {
      std::uint64_t key;
      Occurrence occ;
    };
    std::vector<Pair> pairs;
    for (std::size_t ci = 0; ci < set.cascades.size(); ++ci) {
      const auto& events = set.cascades[ci].events;
      for (std::size_t j = 1; j < events.size(); ++j) {
        for (std::size_t i = 0; i < j; ++i) {
          if (!(events[i].time < events[j].time)) continue;
          const double w = edge_log_weight(events[i].time, events[j].time, config);
          pairs.push_back({edge_key(events[i].node, events[j].node),
                           {static_cast<std::uint32_t>(ci), static_cast<std::uint32_t>(j), w}});
        }
      }
    }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
      return a.key != b.key ? a.key < b.key : a.occ.cascade < b.occ.cascade;
    });

    offsets_.push_back(0);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (i == 0 || pairs[i].key != pairs[i - 1].key) {
        if (i > 0) offsets_.push_back(occurrences_.size());
        edges_.push_back(key_edge(pairs[i].key));
      }
      if (pairs[i].occ.weight > background) occurrences_.push_back(pairs[i].occ);
    }
    if (!pairs.empty()) offsets_.push_back(occurrences_.size());
  }

  std::size_t size() const { return edges_.size(); }
  Edge edge(std::size_t cand) const { return edges_[cand]; }

  double gain(std::size_t cand, const ParentWeights& pw) const {
    double g = 0.0;
    for (std::size_t i = offsets_[cand]; i < offsets_[cand + 1]; ++i) {
      const Occurrence& o = occurrences_[i];
      const double b = pw.best_[o.cascade][o.target];
      if (o.weight > b) g += o.weight - b;
    }
    return g;
  }

  void apply(std::size_t cand, ParentWeights& pw) const {
    for (std::size_t i = offsets_[cand]; i < offsets_[cand + 1]; ++i) {
      const Occurrence& o = occurrences_[i];
      double& b = pw.best_[o.cascade][o.target];
      b = std::max(b, o.weight);
    }
  }

 private:
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Occurrence> occurrences_;
};

std::vector<EdgeCandidate> build_candidates(const CascadeSet& set, const InferenceConfig& config) {
  validate(config);
  const CandidateIndex index(set, config);
  const auto pw = ParentWeights::initial(set, config);
  std::vector<EdgeCandidate> out;
  out.reserve(index.size());
  for (std::size_t c = 0; c < index.size(); ++c) out.push_back({index.edge(c), index.gain(c, pw), 0});
  return out;
}

std::vector<Edge> InferredNetwork::edges() const {
  std::vector<Edge> out;
  out.reserve(selections.size());
  for (const auto& s : selections) out.push_back(s.edge);
  return out;
}

InferredNetwork infer(const CascadeSet& set, const InferenceConfig& config) {
  validate(config);
  InferredNetwork result;
  if (config.k == 0) return result;

  const CandidateIndex index(set, config);
  auto weights = ParentWeights::initial(set, config);

  struct Entry {
    double gain;
    std::uint32_t cand;
    // Selections made when `gain` was computed.
    std::size_t stamp;
  };
  auto lower = [&index](const Entry& a, const Entry& b) {
    if (a.gain != b.gain) return a.gain < b.gain;
    return index.edge(b.cand) < index.edge(a.cand);
  };
  std::vector<Entry> initial;
  initial.reserve(index.size());
  for (std::size_t c = 0; c < index.size(); ++c) {
    const double g = index.gain(c, weights);
    if (g > config.gain_tolerance) initial.push_back({g, static_cast<std::uint32_t>(c), 0});
  }
  std::priority_queue<Entry, std::vector<Entry>, decltype(lower)> heap(lower, std::move(initial));

  // Number of selections after which a node's parent weights last changed.
  NodeId max_node = set.nodes.empty() ? 0 : set.nodes.rbegin()->first;
  for (const Cascade& c : set.cascades)
    for (const Event& ev : c.events) max_node = std::max(max_node, ev.node);
  std::vector<std::size_t> touched(static_cast<std::size_t>(max_node) + 1, 0);

  while (result.selections.size() < config.k && !heap.empty()) {
    Entry top = heap.top();
    heap.pop();
    const Edge e = index.edge(top.cand);
    const std::size_t made = result.selections.size();
    if (top.stamp < touched[e.to]) {
      top.gain = index.gain(top.cand, weights);
      top.stamp = made;
      if (top.gain > config.gain_tolerance) heap.push(top);
      continue;
    }
    index.apply(top.cand, weights);
    touched[e.to] = made + 1;
    result.selections.push_back({e, top.gain, made + 1});
  }
  result.saturated = result.selections.size() < config.k;
  return result;
}

InferredNetwork infer_naive(const CascadeSet& set, const InferenceConfig& config) {
  validate(config);
  InferredNetwork result;
  const CandidateIndex index(set, config);
  auto weights = ParentWeights::initial(set, config);
  while (result.selections.size() < config.k) {
    double best = -std::numeric_limits<double>::infinity();
    std::size_t pick = index.size();
    for (std::size_t c = 0; c < index.size(); ++c) {
      const double g = index.gain(c, weights);
      if (g > best) {
        best = g;
        pick = c;
      }
    }
    if (pick == index.size() || !(best > config.gain_tolerance)) break;
    index.apply(pick, weights);
    result.selections.push_back({index.edge(pick), best, result.selections.size() + 1});
  }
  result.saturated = result.selections.size() < config.k;
  return result;
}

void write_inferred(std::ostream& out, const InferredNetwork& network,
                    const InferenceConfig& config) {
  out << "# k=" << config.k << " alpha=" << text::format_double(config.alpha)
      << " beta=" << text::format_double(config.beta)
      << " epsilon=" << text::format_double(config.epsilon) << '\n';
  for (const Selection& s : network.selections)
    out << s.iteration << ',' << s.edge.from << ',' << s.edge.to << ','
        << text::format_fixed(s.gain, 9) << '\n';
  out << "# saturated=" << (network.saturated ? "true" : "false") << '\n';
}

InferredFile read_inferred(std::istream& in) {
  InferredFile file;
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line) || !line.starts_with("# "))
    throw ParseError(1, "expected '# k=... alpha=... beta=... epsilon=...' header");
  {
    const auto tokens = text::split(std::string_view(line).substr(2), ' ');
    const char* names[] = {"k=", "alpha=", "beta=", "epsilon="};
    if (tokens.size() != 4) throw ParseError(1, "malformed header");
    std::uint64_t k = 0;
    double values[3] = {};
    for (int i = 0; i < 4; ++i) {
      if (!tokens[i].starts_with(names[i])) throw ParseError(1, "malformed header");
      const auto value = tokens[i].substr(std::char_traits<char>::length(names[i]));
      const bool ok = i == 0 ? text::parse_uint(value, k) : text::parse_double(value, values[i - 1]);
      if (!ok) throw ParseError(1, "malformed header value");
    }
    file.config.k = k;
    file.config.alpha = values[0];
    file.config.beta = values[1];
    file.config.epsilon = values[2];
  }

  bool footer = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (footer) throw ParseError(lineno, "content after saturation footer");
    if (line == "# saturated=true" || line == "# saturated=false") {
      file.network.saturated = line.ends_with("true");
      footer = true;
      continue;
    }
    const auto fields = text::split(line, ',');
    std::uint64_t it = 0, u = 0, v = 0;
    double gain = 0.0;
    if (fields.size() != 4 || !text::parse_uint(fields[0], it) || !text::parse_uint(fields[1], u) ||
        !text::parse_uint(fields[2], v) || !text::parse_double(fields[3], gain) ||
        u > UINT32_MAX || v > UINT32_MAX)
      throw ParseError(lineno, "expected 'iteration,u,v,gain'");
    if (it != file.network.selections.size() + 1) throw ParseError(lineno, "iteration out of order");
    file.network.selections.push_back(
        {{static_cast<NodeId>(u), static_cast<NodeId>(v)}, gain, static_cast<std::size_t>(it)});
  }
  if (!footer) throw ParseError(lineno + 1, "missing '# saturated=' footer");
  return file;
}

void save_inferred(const std::string& path, const InferredNetwork& network,
                   const InferenceConfig& config) {
  std::ostringstream out;
  write_inferred(out, network, config);
  text::write_file_atomic(path, out.str());
}

InferredFile load_inferred(const std::string& path) {
  std::istringstream in(text::read_file(path));
  return read_inferred(in);
}

}  // namespace netinf
