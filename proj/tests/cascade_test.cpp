#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "netinf/cascade.hpp"
#include "netinf/error.hpp"
#include "netinf/kronecker.hpp"

using namespace netinf;

namespace {

TransmissionModel model_with(double beta, std::uint64_t seed) {
  TransmissionModel m;
  m.beta = beta;
  m.rng_seed = seed;
  return m;
}

std::set<NodeId> infected(const Cascade& c) {
  std::set<NodeId> s;
  for (const auto& ev : c.events) s.insert(ev.node);
  return s;
}

DirectedGraph complete_graph(std::uint32_t n) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = 0; v < n; ++v)
      if (u != v) edges.push_back({u, v});
  return DirectedGraph(n, edges);
}

}  // namespace

TEST(Simulate, RootWithoutOutEdgesInfectsOnlyItself) {
  const DirectedGraph g(3, {{1, 2}});
  const auto c = simulate_cascade(g, 0, model_with(1.0, 5), 1.0);
  ASSERT_EQ(c.events.size(), 1u);
  EXPECT_EQ(c.events[0], (Event{0, 0.0}));
}

TEST(Simulate, ZeroBetaNeverSpreads) {
  const auto g = complete_graph(5);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto c = simulate_cascade(g, 2, model_with(0.0, s), 1.0);
    ASSERT_EQ(c.events.size(), 1u);
    EXPECT_EQ(c.events[0], (Event{2, 0.0}));
  }
}

TEST(Simulate, InvalidRootOrAlphaIsRejected) {
  const DirectedGraph g(3, {{0, 1}});
  EXPECT_THROW(simulate_cascade(g, 3, model_with(0.5, 1), 1.0), InvalidArgument);
  EXPECT_THROW(simulate_cascade(g, 0, model_with(0.5, 1), 0.0), InvalidArgument);
}

// Oracle: t_c is the sum of two independent unit-mean exponentials, mean 2.
TEST(Simulate, ChainArrivalTimeIsSumOfExponentials) {
  const DirectedGraph g(3, {{0, 1}, {1, 2}});
  const int runs = 10000;
  double sum = 0.0;
  for (int r = 0; r < runs; ++r) {
    const auto c = simulate_cascade(g, 0, model_with(1.0, 99991ULL * r + 17), 1.0);
    ASSERT_EQ(c.events.size(), 3u);
    EXPECT_EQ(c.events[0].node, 0u);
    EXPECT_EQ(c.events[1].node, 1u);
    EXPECT_EQ(c.events[2].node, 2u);
    EXPECT_LT(c.events[0].time, c.events[1].time);
    EXPECT_LT(c.events[1].time, c.events[2].time);
    sum += c.events[2].time;
  }
  EXPECT_NEAR(sum / runs, 2.0, 0.05);
}

TEST(Simulate, EveryInfectionHasAnEarlierInfectedParent) {
  KroneckerSeed seed;
  seed.power = 6;
  seed.target_edges = 200;
  seed.rng_seed = 3;
  const auto g = kronecker_generate(seed);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto c = simulate_cascade(g, static_cast<NodeId>(s), model_with(0.6, s), 2.0);
    validate(c);
    EXPECT_EQ(c.events[0].time, 0.0);
    for (std::size_t i = 1; i < c.events.size(); ++i) {
      const auto& v = c.events[i];
      EXPECT_GT(v.time, 0.0);
      bool has_parent = false;
      for (std::size_t j = 0; j < i; ++j)
        has_parent |= g.contains({c.events[j].node, v.node}) && c.events[j].time < v.time;
      EXPECT_TRUE(has_parent) << "node " << v.node;
    }
  }
}

TEST(Simulate, DeterministicAndMonotoneInBeta) {
  KroneckerSeed seed;
  seed.power = 6;
  seed.target_edges = 256;
  seed.rng_seed = 11;
  const auto g = kronecker_generate(seed);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const NodeId root = static_cast<NodeId>(s % 64);
    const auto a = simulate_cascade(g, root, model_with(0.5, s), 1.5);
    EXPECT_EQ(a, simulate_cascade(g, root, model_with(0.5, s), 1.5));
    std::set<NodeId> previous;
    for (double beta : {0.1, 0.3, 0.5, 0.7, 1.0}) {
      const auto now = infected(simulate_cascade(g, root, model_with(beta, s), 1.5));
      EXPECT_TRUE(std::includes(now.begin(), now.end(), previous.begin(), previous.end()));
      previous = now;
    }
  }
}

TEST(Simulate, HorizonTruncatesObservations) {
  const auto g = complete_graph(30);
  auto m = model_with(0.5, 8);
  m.horizon = 0.5;
  const auto c = simulate_cascade(g, 0, m, 1.0);
  for (const auto& ev : c.events) EXPECT_LE(ev.time, 0.5);
  m.horizon = std::numeric_limits<double>::infinity();
  EXPECT_GT(simulate_cascade(g, 0, m, 1.0).events.size(), c.events.size());
}

TEST(GenerateSet, RejectsZeroCountAndBadModels) {
  const auto g = complete_graph(4);
  EXPECT_THROW(generate_cascade_set(g, model_with(0.5, 1), 0, 0.5), InvalidArgument);
  EXPECT_THROW(generate_cascade_set(g, model_with(0.0, 1), 3, 0.5), InvalidArgument);
  auto m = model_with(0.5, 1);
  m.epsilon = 0.6;
  EXPECT_THROW(generate_cascade_set(g, m, 3, 0.5), InvalidArgument);
  m = model_with(0.5, 1);
  m.alpha_min = 0.0;
  EXPECT_THROW(generate_cascade_set(g, m, 3, 0.5), InvalidArgument);
}

TEST(GenerateSet, CompleteGraphWithCertainTransmissionCoversEverything) {
  const auto result = generate_cascade_set(complete_graph(4), model_with(1.0, 9), 1, 0.0);
  EXPECT_EQ(result.set.cascades.size(), 1u);
  EXPECT_DOUBLE_EQ(result.coverage, 1.0);
  EXPECT_TRUE(result.coverage_met);
}

TEST(GenerateSet, CascadesCarryIdsAlphasAndValidEvents) {
  KroneckerSeed seed;
  seed.power = 7;
  seed.target_edges = 256;
  const auto g = kronecker_generate(seed);
  auto m = model_with(0.5, 21);
  const auto r = generate_cascade_set(g, m, 200, 0.0);
  validate(r.set);
  ASSERT_EQ(r.set.cascades.size(), 200u);
  EXPECT_EQ(r.set.nodes.size(), 128u);
  for (std::size_t i = 0; i < r.set.cascades.size(); ++i) {
    const auto& c = r.set.cascades[i];
    EXPECT_EQ(c.contagion_id, std::to_string(i));
    ASSERT_TRUE(c.alpha.has_value());
    EXPECT_GE(*c.alpha, 0.1);
    EXPECT_LT(*c.alpha, 10.0);
  }
  EXPECT_DOUBLE_EQ(r.coverage, coverage(r.set, 128));
  EXPECT_EQ(r.set, generate_cascade_set(g, m, 200, 0.0).set);
}

TEST(GenerateSet, RerootsSingleEventCascadesToReachCoverage) {
  const DirectedGraph empty(100);
  const auto r = generate_cascade_set(empty, model_with(0.5, 4), 50, 0.45);
  EXPECT_TRUE(r.coverage_met);
  EXPECT_GE(r.coverage, 0.45);
  EXPECT_GT(r.replacements, 0u);
  EXPECT_DOUBLE_EQ(r.coverage, coverage(r.set, 100));
  validate(r.set);

  const auto capped = generate_cascade_set(empty, model_with(0.5, 4), 10, 0.5);
  EXPECT_FALSE(capped.coverage_met);
  EXPECT_DOUBLE_EQ(capped.coverage, 0.1);
}
