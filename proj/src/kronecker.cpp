#include "netinf/kronecker.hpp"

#include <string>
#include <unordered_set>

#include "netinf/error.hpp"
#include "netinf/random.hpp"

namespace netinf {

namespace {

std::uint64_t ipow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

double kronecker_weight(const std::array<double, 4>& entries, int power, NodeId u, NodeId v) {
  double w = 1.0;
  for (int level = 0; level < power; ++level) {
    const unsigned bu = (u >> level) & 1U;
    const unsigned bv = (v >> level) & 1U;
    w *= entries[2 * bu + bv];
  }
  return w;
}

std::uint64_t reachable_pair_count(const std::array<double, 4>& entries, int power) {
  const std::uint64_t positive = (entries[0] > 0) + (entries[1] > 0) + (entries[2] > 0) +
                                 (entries[3] > 0);
  const std::uint64_t diagonal = (entries[0] > 0) + (entries[3] > 0);
  return ipow(positive, power) - ipow(diagonal, power);
}

void validate(const KroneckerSeed& seed) {
  for (double p : seed.entries)
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("seed entries must lie in [0,1]");
  if (seed.power < 1 || seed.power > kMaxKroneckerPower)
    throw InvalidArgument("power must be in [1, " + std::to_string(kMaxKroneckerPower) + "]");
  const std::uint64_t n = std::uint64_t{1} << seed.power;
  if (seed.target_edges > n * (n - 1))
    throw InvalidArgument("target_edges exceeds the " + std::to_string(n * (n - 1)) +
                          " possible directed pairs");
  if (seed.target_edges > reachable_pair_count(seed.entries, seed.power))
    throw InvalidArgument("infeasible target: seed matrix reaches only " +
                          std::to_string(reachable_pair_count(seed.entries, seed.power)) +
                          " non-loop pairs");
}

DirectedGraph kronecker_generate(const KroneckerSeed& seed) {
  validate(seed);
  const auto n = static_cast<std::uint32_t>(std::uint64_t{1} << seed.power);

  const auto& p = seed.entries;
  const double total = p[0] + p[1] + p[2] + p[3];
  const double cumulative[3] = {p[0], p[0] + p[1], p[0] + p[1] + p[2]};
  int last_positive = 3;
  while (last_positive > 0 && p[last_positive] == 0.0) --last_positive;

  Rng rng(seed.rng_seed);
  std::unordered_set<std::uint64_t> seen;
  std::vector<Edge> edges;
  edges.reserve(seed.target_edges);
  while (edges.size() < seed.target_edges) {
    NodeId u = 0, v = 0;
    for (int level = 0; level < seed.power; ++level) {
      const double r = rng.uniform() * total;
      int q = last_positive;
      for (int i = 0; i < 3; ++i) {
        if (r < cumulative[i]) {
          q = i;
          break;
        }
      }
      u = (u << 1) | static_cast<NodeId>(q >> 1);
      v = (v << 1) | static_cast<NodeId>(q & 1);
    }
    if (u == v) continue;
    if (!seen.insert((std::uint64_t{u} << 32) | v).second) continue;
    edges.push_back({u, v});
  }
  return DirectedGraph(n, std::move(edges));
}

}  // namespace netinf
