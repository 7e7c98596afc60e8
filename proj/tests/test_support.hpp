#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "epg/graph.hpp"
#include "epg/h264.hpp"
#include "epg/rng.hpp"

namespace epg::testing {

/// Random DAG on n nodes: each forward pair becomes an edge with probability
/// edge_prob. Weights alternate between unit and dyadic (k * 2^-20) so that
/// comparisons across backends stay exact arithmetic.
struct RandomDag {
  SealedEpg graph;
  std::vector<double> weights;
};

inline double dyadic_weight(Rng& rng) {
  return static_cast<double>(rng.next_below(1 << 16)) * 0x1.0p-20;
}

inline RandomDag make_random_dag(std::uint64_t seed, std::size_t nodes, double edge_prob,
                                 bool unit_weights) {
  Rng rng(seed);
  EpgBuilder b;
  std::vector<double> weights;
  weights.reserve(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    const double w = unit_weights ? 1.0 : dyadic_weight(rng);
    weights.push_back(w);
    b.add_node(w);
  }
  for (std::size_t src = 0; src < nodes; ++src)
    for (std::size_t dst = src + 1; dst < nodes; ++dst)
      if (rng.bernoulli(edge_prob))
        b.add_edge(static_cast<NodeId>(src), static_cast<NodeId>(dst));
  return {b.seal(), std::move(weights)};
}

/// Random out-forest: every node except the roots picks one earlier parent.
inline RandomDag make_random_forest(std::uint64_t seed, std::size_t nodes, double root_prob,
                                    bool unit_weights) {
  Rng rng(seed);
  EpgBuilder b;
  std::vector<double> weights;
  weights.reserve(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    const double w = unit_weights ? 1.0 : dyadic_weight(rng);
    weights.push_back(w);
    b.add_node(w);
  }
  for (std::size_t v = 1; v < nodes; ++v) {
    if (rng.bernoulli(root_prob)) continue;
    const auto parent = static_cast<NodeId>(rng.next_below(v));
    b.add_edge(parent, static_cast<NodeId>(v));
  }
  return {b.seal(), std::move(weights)};
}

/// 0 -> 1 -> 2 ... with the given weights.
inline SealedEpg make_chain(const std::vector<double>& weights) {
  EpgBuilder b;
  for (const double w : weights) b.add_node(w);
  for (std::size_t i = 0; i + 1 < weights.size(); ++i)
    b.add_edge(static_cast<NodeId>(i), static_cast<NodeId>(i + 1));
  return b.seal();
}

/// 0 -> {1, 2} -> 3, unit weights.
inline SealedEpg make_diamond() {
  EpgBuilder b;
  for (int i = 0; i < 4; ++i) b.add_node(1.0);
  b.add_edge(0, 1);
  b.add_edge(0, 2);
  b.add_edge(1, 3);
  b.add_edge(2, 3);
  return b.seal();
}

/// Sample-window oracle for motion-compensated coverage: enumerate every
/// pixel the interpolation can touch, clamp it to the frame, and collect the
/// owning macroblocks. Independent of the range arithmetic under test.
inline std::set<h264::MbPos> coverage_by_pixel(const h264::FrameGrid& grid, h264::MbPos mb,
                                               const h264::InterPartition& p,
                                               h264::InterpolationMargin margin) {
  const auto floor_div4 = [](std::int64_t a) {
    return a >= 0 ? a / 4 : -((-a + 3) / 4);
  };
  const std::int64_t base_x = 16ll * mb.x + p.x_off + floor_div4(p.mv_qx);
  const std::int64_t base_y = 16ll * mb.y + p.y_off + floor_div4(p.mv_qy);
  const bool frac_x = (p.mv_qx % 4) != 0;
  const bool frac_y = (p.mv_qy % 4) != 0;
  const std::int64_t x0 = base_x - (frac_x ? margin.before : 0);
  const std::int64_t x1 = base_x + p.width - 1 + (frac_x ? margin.after : 0);
  const std::int64_t y0 = base_y - (frac_y ? margin.before : 0);
  const std::int64_t y1 = base_y + p.height - 1 + (frac_y ? margin.after : 0);

  std::set<h264::MbPos> mbs;
  for (std::int64_t py = y0; py <= y1; ++py) {
    for (std::int64_t px = x0; px <= x1; ++px) {
      const std::int64_t cx = std::min<std::int64_t>(std::max<std::int64_t>(px, 0),
                                                     16ll * grid.width_mb - 1);
      const std::int64_t cy = std::min<std::int64_t>(std::max<std::int64_t>(py, 0),
                                                     16ll * grid.height_mb - 1);
      mbs.insert({static_cast<std::uint32_t>(cx / 16), static_cast<std::uint32_t>(cy / 16)});
    }
  }
  return mbs;
}

}  // namespace epg::testing
