#include "epg/impact.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

namespace epg {

ImpactVector impact_oracle(const SealedEpg& g) {
  const std::size_t n = g.node_count();
  const auto& weights = g.local_weights();
  ImpactVector values(n, 0.0);
  // mark[u] == v + 1 means u is reachable from the v currently swept.
  std::vector<NodeId> mark(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    const NodeId stamp = v + 1;
    mark[v] = stamp;
    double acc = 0.0;
    for (NodeId u = v; u < static_cast<NodeId>(n); ++u) {
      if (mark[u] != stamp) continue;
      acc += weights[u];
      for (const NodeId w : g.out_neighbors(u)) mark[w] = stamp;
    }
    values[v] = acc;
  }
  return values;
}

ImpactVector impact_exact(const SealedEpg& g, std::size_t chunk_nodes) {
  if (chunk_nodes == 0) throw InvalidParamsError("chunk size must be positive");
  const std::size_t n = g.node_count();
  const auto& weights = g.local_weights();
  ImpactVector values(n, 0.0);

  std::vector<std::uint64_t> bits;
  std::vector<char> live;
  for (std::size_t lo = 0; lo < n; lo += chunk_nodes) {
    const std::size_t hi = std::min(n, lo + chunk_nodes);
    const std::size_t words = (hi - lo + 63) / 64;
    // Row v holds the part of reach(v) that falls in [lo, hi). Nodes >= hi
    // cannot reach the chunk, so only rows below hi exist.
    bits.assign(hi * words, 0);
    live.assign(hi, 0);
    for (std::size_t vi = hi; vi-- > 0;) {
      std::uint64_t* row = bits.data() + vi * words;
      bool any = false;
      if (vi >= lo) {
        row[(vi - lo) >> 6] |= std::uint64_t{1} << ((vi - lo) & 63);
        any = true;
      }
      for (const NodeId w : g.out_neighbors(static_cast<NodeId>(vi))) {
        if (w >= hi || !live[w]) continue;
        const std::uint64_t* src = bits.data() + static_cast<std::size_t>(w) * words;
        for (std::size_t k = 0; k < words; ++k) row[k] |= src[k];
        any = true;
      }
      live[vi] = any ? 1 : 0;
      if (!any) continue;
      // Ascending accumulation; the sequence of additions into values[vi] is
      // sorted(reach(vi)) for every chunk size, hence the bit-stable result.
      double acc = values[vi];
      for (std::size_t k = 0; k < words; ++k) {
        std::uint64_t m = row[k];
        while (m != 0) {
          acc += weights[lo + (k << 6) + static_cast<std::size_t>(std::countr_zero(m))];
          m &= m - 1;
        }
      }
      values[vi] = acc;
    }
  }
  return values;
}

ImpactVector impact_fast_bound(const SealedEpg& g) {
  const std::size_t n = g.node_count();
  const auto& weights = g.local_weights();
  ImpactVector values(n, 0.0);
  for (std::size_t vi = n; vi-- > 0;) {
    double acc = weights[vi];
    for (const NodeId w : g.out_neighbors(static_cast<NodeId>(vi))) acc += values[w];
    values[vi] = acc;
  }
  return values;
}

ImpactVector compute_impacts(const SealedEpg& g, ImpactBackend backend, std::size_t chunk_nodes) {
  switch (backend) {
    case ImpactBackend::Oracle:
      return impact_oracle(g);
    case ImpactBackend::Exact:
      return impact_exact(g, chunk_nodes);
    case ImpactBackend::FastBound:
      return impact_fast_bound(g);
  }
  throw InvalidParamsError("unknown impact backend");
}

}  // namespace epg
