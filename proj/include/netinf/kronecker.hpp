#pragma once

#include <array>
#include <cstdint>

#include "netinf/graph.hpp"

namespace netinf {

/// 2x2 initiator for a Kronecker graph, row-major: {p00, p01, p10, p11}.
/// The power-fold Kronecker product of this matrix gives a weight for every
/// (u, v) pair of a graph on 2^power nodes.
struct KroneckerSeed {
  std::array<double, 4> entries{0.9, 0.5, 0.5, 0.3};
  int power = 1;
  std::uint64_t target_edges = 0;
  std::uint64_t rng_seed = 0;
};

inline constexpr int kMaxKroneckerPower = 30;

/// Throws InvalidArgument unless entries lie in [0,1], 1 <= power <= 30 and
/// target_edges fits in the number of non-loop pairs.
void validate(const KroneckerSeed& seed);

/// Entry (u, v) of the power-fold Kronecker product: the product over levels
/// of entries[2 * bit_u + bit_v].
double kronecker_weight(const std::array<double, 4>& entries, int power, NodeId u, NodeId v);

/// Number of off-diagonal pairs with strictly positive Kronecker weight.
std::uint64_t reachable_pair_count(const std::array<double, 4>& entries, int power);

/// Draws exactly target_edges distinct non-loop edges. Each edge is drawn by
/// descending the Kronecker recursion one level at a time, choosing a quadrant
/// in proportion to the seed entries; self-loops and repeats are rejected and
/// redrawn. Deterministic in seed.rng_seed.
DirectedGraph kronecker_generate(const KroneckerSeed& seed);

}  // namespace netinf
