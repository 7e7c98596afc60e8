#include "epg/impact.hpp"

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace epg {
namespace {

TEST(ImpactOracle, ChainCountsEveryDownstreamNode) {
  const SealedEpg g = testing::make_chain({1.0, 1.0, 1.0});
  EXPECT_EQ(impact_oracle(g), (ImpactVector{3.0, 2.0, 1.0}));
}

TEST(ImpactOracle, DiamondCountsTheSinkOnce) {
  const SealedEpg g = testing::make_diamond();
  EXPECT_EQ(impact_oracle(g), (ImpactVector{4.0, 2.0, 2.0, 1.0}));
}

TEST(ImpactOracle, EmptyGraph) {
  EpgBuilder b;
  EXPECT_TRUE(impact_oracle(b.seal()).empty());
}

TEST(ImpactOracle, DisconnectedNodesKeepLocalWeights) {
  EpgBuilder b;
  b.add_node(1.0);
  b.add_node(2.5);
  const SealedEpg g = b.seal();
  EXPECT_EQ(impact_oracle(g), (ImpactVector{1.0, 2.5}));
  EXPECT_EQ(impact_exact(g), (ImpactVector{1.0, 2.5}));
}

TEST(ImpactExact, MatchesOracleOnFixtures) {
  EXPECT_EQ(impact_exact(testing::make_diamond()), (ImpactVector{4.0, 2.0, 2.0, 1.0}));
  EXPECT_EQ(impact_exact(testing::make_chain({0.5, 0.25, 4.0})),
            (ImpactVector{4.75, 4.25, 4.0}));
}

TEST(ImpactExact, MatchesOracleOnRandomDags) {
  std::size_t checked = 0;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const std::size_t nodes = 20 + (seed * 13) % 100;
    const double prob = (seed % 2) == 0 ? 0.03 : 0.15;
    const auto dag = testing::make_random_dag(seed, nodes, prob, (seed % 3) == 0);
    const ImpactVector want = impact_oracle(dag.graph);
    const ImpactVector got = impact_exact(dag.graph);
    ASSERT_EQ(want.size(), got.size());
    for (std::size_t v = 0; v < want.size(); ++v) {
      ASSERT_EQ(want[v], got[v]) << "seed " << seed << " node " << v;
      ++checked;
    }
  }
  EXPECT_GT(checked, 3000u);
}

TEST(ImpactExact, MatchesOracleOnTwoHundredNodeMediumDensityDag) {
  const auto dag = testing::make_random_dag(421, 200, 0.05, true);
  EXPECT_EQ(impact_oracle(dag.graph), impact_exact(dag.graph));
}

TEST(ImpactExact, ChunkSizeNeverChangesTheBits) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const auto dag = testing::make_random_dag(seed * 977, 150, 0.06, false);
    const ImpactVector base = impact_exact(dag.graph, 1);
    for (const std::size_t chunk : {std::size_t{2}, std::size_t{3}, std::size_t{7},
                                    std::size_t{64}, std::size_t{149}, std::size_t{150},
                                    std::size_t{4096}}) {
      const ImpactVector other = impact_exact(dag.graph, chunk);
      ASSERT_EQ(base.size(), other.size());
      for (std::size_t v = 0; v < base.size(); ++v) {
        ASSERT_EQ(base[v], other[v]) << "seed " << seed << " chunk " << chunk << " node " << v;
      }
    }
  }
}

TEST(ImpactExact, ZeroChunkIsRejected) {
  const SealedEpg g = testing::make_diamond();
  EXPECT_THROW(impact_exact(g, 0), InvalidParamsError);
}

TEST(ImpactFastBound, ChainIsExact) {
  const SealedEpg g = testing::make_chain({1.0, 1.0, 1.0});
  EXPECT_EQ(impact_fast_bound(g), (ImpactVector{3.0, 2.0, 1.0}));
}

TEST(ImpactFastBound, DiamondOvercountsTheSharedSink) {
  const SealedEpg g = testing::make_diamond();
  EXPECT_EQ(impact_fast_bound(g), (ImpactVector{5.0, 2.0, 2.0, 1.0}));
}

TEST(ImpactFastBound, NeverBelowExactOnRandomDags) {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    const auto dag = testing::make_random_dag(seed, 80, 0.1, false);
    const ImpactVector exact = impact_exact(dag.graph);
    const ImpactVector fast = impact_fast_bound(dag.graph);
    for (std::size_t v = 0; v < exact.size(); ++v) {
      ASSERT_GE(fast[v], exact[v]) << "seed " << seed << " node " << v;
    }
  }
}

TEST(ImpactFastBound, EqualsExactOnForests) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto forest = testing::make_random_forest(seed, 120, 0.1, (seed % 2) == 0);
    const ImpactVector exact = impact_exact(forest.graph);
    const ImpactVector fast = impact_fast_bound(forest.graph);
    ASSERT_EQ(exact, fast) << "seed " << seed;
  }
}

TEST(ImpactInvariants, LocalWeightLowerBoundsEveryBackend) {
  for (std::uint64_t seed = 300; seed < 315; ++seed) {
    const auto dag = testing::make_random_dag(seed, 70, 0.08, false);
    for (const auto backend :
         {ImpactBackend::Oracle, ImpactBackend::Exact, ImpactBackend::FastBound}) {
      const ImpactVector values = compute_impacts(dag.graph, backend);
      for (std::size_t v = 0; v < values.size(); ++v) {
        ASSERT_GE(values[v], dag.weights[v]);
      }
    }
  }
}

TEST(ImpactInvariants, SinksKeepTheirLocalWeight) {
  const auto dag = testing::make_random_dag(7, 50, 0.1, false);
  const ImpactVector exact = impact_exact(dag.graph);
  for (NodeId v = 0; v < dag.graph.node_count(); ++v) {
    if (!dag.graph.out_neighbors(v).empty()) continue;
    EXPECT_EQ(exact[v], dag.weights[v]);
  }
}

TEST(ImpactInvariants, EdgeMonotonicityUnderDyadicWeights) {
  // Dyadic weights make value(u) >= w(u) + value(v) exact arithmetic.
  for (std::uint64_t seed = 500; seed < 510; ++seed) {
    const auto dag = testing::make_random_dag(seed, 60, 0.12, false);
    const ImpactVector exact = impact_exact(dag.graph);
    for (NodeId u = 0; u < dag.graph.node_count(); ++u) {
      for (const NodeId v : dag.graph.out_neighbors(u)) {
        ASSERT_GE(exact[u], dag.weights[u] + exact[v]) << "edge (" << u << ", " << v << ")";
      }
    }
  }
}

TEST(ImpactInvariants, UnitWeightImpactsNeverExceedNodeCount) {
  const auto dag = testing::make_random_dag(9, 90, 0.2, true);
  for (const double v : impact_exact(dag.graph)) {
    EXPECT_GE(v, 1.0);
    EXPECT_LE(v, static_cast<double>(dag.graph.node_count()));
  }
}

}  // namespace
}  // namespace epg
