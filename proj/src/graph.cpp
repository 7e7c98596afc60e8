#include "epg/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace epg {

namespace {

std::uint64_t edge_key(NodeId src, NodeId dst) {
  return (static_cast<std::uint64_t>(src) << 32) | dst;
}

}  // namespace

void EpgBuilder::require_open() const {
  if (sealed_) throw SealedGraphError("graph is already sealed");
}

NodeId EpgBuilder::add_node(double local_weight) {
  require_open();
  if (!std::isfinite(local_weight) || local_weight < 0.0)
    throw NegativeWeightError("local weight must be finite and non-negative");
  if (weights_.size() >= std::numeric_limits<NodeId>::max())
    throw Error("node capacity exhausted");
  weights_.push_back(local_weight);
  out_.emplace_back();
  return static_cast<NodeId>(weights_.size() - 1);
}

void EpgBuilder::add_edge(NodeId src, NodeId dst) {
  require_open();
  const auto n = weights_.size();
  if (src >= n || dst >= n)
    throw UnknownNodeError("edge endpoint out of range: (" + std::to_string(src) + ", " +
                           std::to_string(dst) + ") with " + std::to_string(n) + " nodes");
  if (src >= dst)
    throw ForwardEdgeError("edge must run from a lower to a strictly higher node index, got (" +
                           std::to_string(src) + ", " + std::to_string(dst) + ")");
  auto [it, fresh] = multiplicity_.try_emplace(edge_key(src, dst), 0u);
  ++it->second;
  if (fresh) out_[src].push_back(dst);
}

SealedEpg EpgBuilder::seal() {
  require_open();
  sealed_ = true;

  const std::size_t n = weights_.size();
  SealedEpg g;
  g.weights_ = std::move(weights_);

  g.out_offsets_.assign(n + 1, 0);
  std::size_t total = 0;
  for (std::size_t v = 0; v < n; ++v) {
    total += out_[v].size();
    g.out_offsets_[v + 1] = total;
  }

  g.out_targets_.reserve(total);
  g.out_multiplicity_.reserve(total);
  std::uint64_t refs = 0;
  for (std::size_t v = 0; v < n; ++v) {
    auto& row = out_[v];
    std::sort(row.begin(), row.end());
    for (const NodeId dst : row) {
      const std::uint32_t m = multiplicity_.at(edge_key(static_cast<NodeId>(v), dst));
      g.out_targets_.push_back(dst);
      g.out_multiplicity_.push_back(m);
      refs += m;
    }
  }
  g.reference_count_ = refs;

  g.in_offsets_.assign(n + 1, 0);
  for (const NodeId dst : g.out_targets_) ++g.in_offsets_[dst + 1];
  for (std::size_t i = 0; i < n; ++i) g.in_offsets_[i + 1] += g.in_offsets_[i];
  g.in_sources_.resize(total);
  std::vector<std::size_t> cursor(g.in_offsets_.begin(), g.in_offsets_.end() - (n ? 1 : 0));
  for (std::size_t v = 0; v < n; ++v) {
    const auto lo = g.out_offsets_[v];
    const auto hi = g.out_offsets_[v + 1];
    for (std::size_t i = lo; i < hi; ++i) {
      // v ascends, so each in-list ends up sorted by source.
      g.in_sources_[cursor[g.out_targets_[i]]++] = static_cast<NodeId>(v);
    }
  }

  out_.clear();
  out_.shrink_to_fit();
  multiplicity_.clear();
  return g;
}

void SealedEpg::require_node(NodeId v) const {
  if (v >= node_count())
    throw UnknownNodeError("node " + std::to_string(v) + " out of range (graph has " +
                           std::to_string(node_count()) + " nodes)");
}

double SealedEpg::local_weight(NodeId v) const {
  require_node(v);
  return weights_[v];
}

std::span<const NodeId> SealedEpg::out_neighbors(NodeId v) const {
  require_node(v);
  return {out_targets_.data() + out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]};
}

std::span<const NodeId> SealedEpg::in_neighbors(NodeId v) const {
  require_node(v);
  return {in_sources_.data() + in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]};
}

std::uint32_t SealedEpg::edge_multiplicity(NodeId src, NodeId dst) const {
  require_node(dst);
  const auto row = out_neighbors(src);
  const auto it = std::lower_bound(row.begin(), row.end(), dst);
  if (it == row.end() || *it != dst) return 0;
  return out_multiplicity_[out_offsets_[src] + static_cast<std::size_t>(it - row.begin())];
}

std::vector<NodeId> SealedEpg::descendants(NodeId v) const {
  require_node(v);
  std::vector<char> visited(node_count(), 0);
  std::vector<NodeId> stack{v};
  std::vector<NodeId> result;
  visited[v] = 1;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (const NodeId w : out_neighbors(u)) {
      if (visited[w]) continue;
      visited[w] = 1;
      result.push_back(w);
      stack.push_back(w);
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace epg
