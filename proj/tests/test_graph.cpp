#include "epg/graph.hpp"

#include <gtest/gtest.h>

#include "epg/impact.hpp"
#include "test_support.hpp"

namespace epg {
namespace {

TEST(EpgBuilder, AddNodeReturnsDenseIndices) {
  EpgBuilder b;
  EXPECT_EQ(b.add_node(1.0), 0u);
  EXPECT_EQ(b.add_node(2.5), 1u);
  EXPECT_EQ(b.add_node(0.0), 2u);
  EXPECT_EQ(b.node_count(), 3u);
}

TEST(EpgBuilder, RejectsBadWeights) {
  EpgBuilder b;
  EXPECT_THROW(b.add_node(-1.0), NegativeWeightError);
  EXPECT_THROW(b.add_node(std::nan("")), NegativeWeightError);
  EXPECT_THROW(b.add_node(std::numeric_limits<double>::infinity()), NegativeWeightError);
  EXPECT_EQ(b.node_count(), 0u);
}

TEST(EpgBuilder, RejectsBackwardAndSelfEdges) {
  EpgBuilder b;
  b.add_node(1.0);
  b.add_node(1.0);
  EXPECT_THROW(b.add_edge(1, 0), ForwardEdgeError);
  EXPECT_THROW(b.add_edge(0, 0), ForwardEdgeError);
  EXPECT_EQ(b.edge_count(), 0u);
}

TEST(EpgBuilder, RejectsUnknownEndpoints) {
  EpgBuilder b;
  b.add_node(1.0);
  EXPECT_THROW(b.add_edge(0, 5), UnknownNodeError);
  EXPECT_THROW(b.add_edge(7, 8), UnknownNodeError);
}

TEST(EpgBuilder, DuplicateEdgeCollapsesIntoMultiplicity) {
  EpgBuilder b;
  b.add_node(1.0);
  b.add_node(1.0);
  b.add_edge(0, 1);
  b.add_edge(0, 1);
  b.add_edge(0, 1);
  EXPECT_EQ(b.edge_count(), 1u);
  const SealedEpg g = b.seal();
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.edge_multiplicity(0, 1), 3u);
  EXPECT_EQ(g.reference_count(), 3u);
}

TEST(EpgBuilder, SealFreezesTheBuilder) {
  EpgBuilder b;
  b.add_node(1.0);
  b.add_node(1.0);
  b.add_edge(0, 1);
  const SealedEpg g = b.seal();
  EXPECT_TRUE(b.sealed());
  EXPECT_THROW(b.add_node(1.0), SealedGraphError);
  EXPECT_THROW(b.add_edge(0, 1), SealedGraphError);
  EXPECT_THROW(b.seal(), SealedGraphError);
  EXPECT_EQ(g.node_count(), 2u);
}

TEST(SealedEpg, EmptyGraph) {
  EpgBuilder b;
  const SealedEpg g = b.seal();
  EXPECT_EQ(g.node_count(), 0u);
  EXPECT_EQ(g.edge_count(), 0u);
  EXPECT_EQ(g.reference_count(), 0u);
  EXPECT_THROW(g.local_weight(0), UnknownNodeError);
}

TEST(SealedEpg, AdjacencyIsSortedBothWays) {
  EpgBuilder b;
  for (int i = 0; i < 5; ++i) b.add_node(1.0);
  b.add_edge(0, 4);
  b.add_edge(0, 2);
  b.add_edge(0, 3);
  b.add_edge(1, 4);
  b.add_edge(2, 4);
  const SealedEpg g = b.seal();

  const auto out0 = g.out_neighbors(0);
  EXPECT_EQ(std::vector<NodeId>(out0.begin(), out0.end()), (std::vector<NodeId>{2, 3, 4}));
  const auto in4 = g.in_neighbors(4);
  EXPECT_EQ(std::vector<NodeId>(in4.begin(), in4.end()), (std::vector<NodeId>{0, 1, 2}));
  EXPECT_TRUE(g.out_neighbors(4).empty());
  EXPECT_TRUE(g.in_neighbors(0).empty());
  EXPECT_EQ(g.edge_multiplicity(0, 1), 0u);
}

TEST(SealedEpg, WeightsSurviveSealing) {
  EpgBuilder b;
  b.add_node(0.5);
  b.add_node(2.0);
  const SealedEpg g = b.seal();
  EXPECT_DOUBLE_EQ(g.local_weight(0), 0.5);
  EXPECT_DOUBLE_EQ(g.local_weight(1), 2.0);
}

TEST(SealedEpg, DescendantsOnChain) {
  const SealedEpg g = testing::make_chain({1.0, 1.0, 1.0});
  EXPECT_EQ(g.descendants(0), (std::vector<NodeId>{1, 2}));
  EXPECT_EQ(g.descendants(1), (std::vector<NodeId>{2}));
  EXPECT_TRUE(g.descendants(2).empty());
  EXPECT_THROW(g.descendants(3), UnknownNodeError);
}

TEST(SealedEpg, DescendantsOnDiamondCountEachNodeOnce) {
  const SealedEpg g = testing::make_diamond();
  EXPECT_EQ(g.descendants(0), (std::vector<NodeId>{1, 2, 3}));
  EXPECT_EQ(g.descendants(1), (std::vector<NodeId>{3}));
}

TEST(SealedEpg, DescendantsMatchOracleImpactUnderUnitWeights) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto dag = testing::make_random_dag(seed, 60, 0.08, true);
    const ImpactVector impacts = impact_oracle(dag.graph);
    for (NodeId v = 0; v < dag.graph.node_count(); ++v) {
      EXPECT_EQ(impacts[v], 1.0 + static_cast<double>(dag.graph.descendants(v).size()));
    }
  }
}

}  // namespace
}  // namespace epg
