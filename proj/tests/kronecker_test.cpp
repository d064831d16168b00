#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "netinf/error.hpp"
#include "netinf/kronecker.hpp"
#include "oracles.hpp"

using namespace netinf;

namespace {

KroneckerSeed make_seed(int power, std::uint64_t edges, std::uint64_t rng_seed,
                        std::array<double, 4> entries = {0.9, 0.5, 0.5, 0.3}) {
  KroneckerSeed s;
  s.entries = entries;
  s.power = power;
  s.target_edges = edges;
  s.rng_seed = rng_seed;
  return s;
}

}  // namespace

TEST(Kronecker, ProducesRequestedSizeWithoutLoopsOrRepeats) {
  const auto g = kronecker_generate(make_seed(9, 1024, 7));
  EXPECT_EQ(g.node_count(), 512u);
  ASSERT_EQ(g.edge_count(), 1024u);
  const auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    EXPECT_NE(edges[i].from, edges[i].to);
    EXPECT_LT(edges[i].from, 512u);
    EXPECT_LT(edges[i].to, 512u);
    if (i > 0) EXPECT_LT(edges[i - 1], edges[i]);
  }
}

TEST(Kronecker, ZeroMatrixWithZeroTargetIsEmpty) {
  const auto g = kronecker_generate(make_seed(3, 0, 1, {0, 0, 0, 0}));
  EXPECT_EQ(g.node_count(), 8u);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(Kronecker, InfeasibleTargetsAreRejected) {
  EXPECT_THROW(kronecker_generate(make_seed(3, 1, 1, {0, 0, 0, 0})), InvalidArgument);
  // Only diagonal quadrants: every draw is a self-loop.
  EXPECT_THROW(kronecker_generate(make_seed(3, 1, 1, {0.5, 0, 0, 0.5})), InvalidArgument);
  EXPECT_THROW(kronecker_generate(make_seed(2, 13, 1)), InvalidArgument);
  EXPECT_NO_THROW(kronecker_generate(make_seed(2, 12, 1)));
  EXPECT_THROW(kronecker_generate(make_seed(0, 0, 1)), InvalidArgument);
  EXPECT_THROW(kronecker_generate(make_seed(2, 1, 1, {1.5, 0, 0, 0})), InvalidArgument);
}

TEST(Kronecker, ReachablePairsMatchExplicitMatrix) {
  for (const std::array<double, 4> entries :
       {std::array<double, 4>{0.9, 0.5, 0.5, 0.3}, {0.5, 0, 0.2, 0.7}, {0, 0.4, 0, 0}, {0.3, 0, 0, 0.2}}) {
    for (int power = 1; power <= 4; ++power) {
      const auto m = oracle::kronecker_matrix(entries, power);
      std::uint64_t positive = 0;
      for (std::size_t u = 0; u < m.size(); ++u)
        for (std::size_t v = 0; v < m.size(); ++v) positive += (u != v && m[u][v] > 0);
      EXPECT_EQ(reachable_pair_count(entries, power), positive);
    }
  }
}

TEST(Kronecker, WeightsMatchExplicitProduct) {
  const std::array<double, 4> entries{0.9, 0.5, 0.4, 0.3};
  for (int power = 1; power <= 4; ++power) {
    const auto m = oracle::kronecker_matrix(entries, power);
    double sum = 0.0;
    for (std::size_t u = 0; u < m.size(); ++u)
      for (std::size_t v = 0; v < m.size(); ++v) {
        sum += m[u][v];
        EXPECT_NEAR(kronecker_weight(entries, power, static_cast<NodeId>(u), static_cast<NodeId>(v)),
                    m[u][v], 1e-15);
      }
    EXPECT_NEAR(sum, std::pow(0.9 + 0.5 + 0.4 + 0.3, power), 1e-12);
  }
}

TEST(Kronecker, DeterministicInSeed) {
  const auto a = kronecker_generate(make_seed(6, 128, 42));
  const auto b = kronecker_generate(make_seed(6, 128, 42));
  const auto c = kronecker_generate(make_seed(6, 128, 43));
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
}

// The first accepted edge of each generation is a draw from the off-diagonal
// part of the Kronecker matrix, renormalized.
TEST(Kronecker, EdgeFrequenciesFollowKroneckerMatrix) {
  const std::array<double, 4> entries{0.9, 0.5, 0.5, 0.3};
  for (int power : {2, 3}) {
    const auto m = oracle::kronecker_matrix(entries, power);
    double off_diagonal = 0.0;
    for (std::size_t u = 0; u < m.size(); ++u)
      for (std::size_t v = 0; v < m.size(); ++v)
        if (u != v) off_diagonal += m[u][v];

    const int runs = 20000;
    std::map<Edge, int> counts;
    for (int r = 0; r < runs; ++r) {
      const auto g = kronecker_generate(make_seed(power, 1, 1000003ULL * r + power));
      ++counts[g.edges()[0]];
    }
    for (std::size_t u = 0; u < m.size(); ++u)
      for (std::size_t v = 0; v < m.size(); ++v) {
        if (u == v) continue;
        const double p = m[u][v] / off_diagonal;
        const double freq = counts[Edge{static_cast<NodeId>(u), static_cast<NodeId>(v)}] /
                            static_cast<double>(runs);
        const double se = std::sqrt(p * (1 - p) / runs);
        EXPECT_LE(std::abs(freq - p), 3 * se) << "power " << power << " edge " << u << "," << v;
      }
  }
}

TEST(GraphFile, ExactBytesAndRoundTrip) {
  const DirectedGraph g(3, {{2, 0}, {0, 1}});
  std::ostringstream out;
  write_graph(out, g);
  EXPECT_EQ(out.str(), "nodes:3\n0,1\n2,0\n");
  std::istringstream in(out.str());
  EXPECT_EQ(read_graph(in), g);

  const auto big = kronecker_generate(make_seed(5, 80, 3));
  std::stringstream s;
  write_graph(s, big);
  EXPECT_EQ(read_graph(s), big);
}

TEST(GraphFile, MalformedInputReportsLine) {
  auto parse = [](const std::string& doc) {
    std::istringstream in(doc);
    return read_graph(in);
  };
  EXPECT_THROW(parse("edges:3\n"), ParseError);
  try {
    parse("nodes:3\n0,1\n1,1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse("nodes:3\n0,3\n"), ParseError);
  EXPECT_THROW(parse("nodes:3\n1,0\n0,1\n"), ParseError);
  EXPECT_THROW(DirectedGraph(2, {{0, 1}, {0, 1}}), InvalidArgument);
}
