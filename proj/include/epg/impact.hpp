#pragma once

#include <cstddef>
#include <vector>

#include "epg/graph.hpp"

namespace epg {

/// Global impact per node, indexed by NodeId: the node's own weight plus the
/// weights of all distinct nodes reachable from it. Under worst-case
/// propagation this is the maximum number of output elements an error in the
/// node can corrupt.
using ImpactVector = std::vector<double>;

enum class ImpactBackend { Oracle, Exact, FastBound };

/// Bitset rows per chunk: kDefaultChunkNodes columns, one row per live node.
inline constexpr std::size_t kDefaultChunkNodes = 4096;

/// Reference implementation: one forward mark-and-sweep per node, O(V*(V+E)).
/// Ground truth for the other backends; quadratic, so keep it off big graphs.
ImpactVector impact_oracle(const SealedEpg& g);

/// Reverse-order reachability closure over index-range chunks of chunk_nodes
/// bits, bounding bitset memory by node_count * chunk_nodes / 8 bytes. The
/// result is bit-identical for every chunk size: weights are accumulated in
/// ascending reach order, which chunking does not change.
ImpactVector impact_exact(const SealedEpg& g, std::size_t chunk_nodes = kDefaultChunkNodes);

/// O(V+E) recurrence value(v) = weight(v) + sum of value over direct
/// consumers. Nodes reachable along several paths are counted once per path,
/// so this upper-bounds impact_exact; the two agree exactly on forests.
ImpactVector impact_fast_bound(const SealedEpg& g);

ImpactVector compute_impacts(const SealedEpg& g, ImpactBackend backend,
                             std::size_t chunk_nodes = kDefaultChunkNodes);

}  // namespace epg
