#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "epg/errors.hpp"

namespace epg {

/// Dense node index. Nodes are numbered in insertion order, and insertion
/// order is a topological order: every edge runs from a lower index to a
/// strictly higher one. That property is structural, not checked after the
/// fact; add_edge rejects anything else.
using NodeId = std::uint32_t;

class SealedEpg;

/// Mutable error-propagation graph. A node is one task instance and carries a
/// non-negative local impact weight (the number of output elements an error
/// inside that instance can corrupt). An edge follows the data flow from a
/// producer to a consumer of one of its outputs.
class EpgBuilder {
public:
  /// Appends a node and returns its index. The weight must be finite and
  /// non-negative.
  NodeId add_node(double local_weight);

  /// Adds a propagation edge src -> dst with src < dst. Inserting the same
  /// edge again keeps a single adjacency entry and bumps its multiplicity.
  void add_edge(NodeId src, NodeId dst);

  /// Freezes the graph into an immutable form. The builder is unusable
  /// afterwards; any further call throws SealedGraphError.
  SealedEpg seal();

  std::size_t node_count() const noexcept { return weights_.size(); }

  /// Number of distinct (src, dst) pairs.
  std::size_t edge_count() const noexcept { return multiplicity_.size(); }

  bool sealed() const noexcept { return sealed_; }

private:
  void require_open() const;

  std::vector<double> weights_;
  std::vector<std::vector<NodeId>> out_;
  std::unordered_map<std::uint64_t, std::uint32_t> multiplicity_;
  bool sealed_ = false;
};

/// Immutable graph with sorted CSR adjacency in both directions. All methods
/// are const and safe for concurrent readers.
class SealedEpg {
public:
  /// A default-constructed instance is the empty graph.
  SealedEpg() = default;

  std::size_t node_count() const noexcept { return weights_.size(); }

  /// Number of distinct (src, dst) pairs.
  std::size_t edge_count() const noexcept { return out_targets_.size(); }

  /// Total edge insertions, duplicates included.
  std::uint64_t reference_count() const noexcept { return reference_count_; }

  double local_weight(NodeId v) const;
  const std::vector<double>& local_weights() const noexcept { return weights_; }

  /// Direct consumers of v, ascending.
  std::span<const NodeId> out_neighbors(NodeId v) const;

  /// Direct producers feeding v, ascending.
  std::span<const NodeId> in_neighbors(NodeId v) const;

  /// Multiplicity of edge (src, dst); 0 when absent.
  std::uint32_t edge_multiplicity(NodeId src, NodeId dst) const;

  /// Every node reachable from v along edges, excluding v itself, ascending.
  std::vector<NodeId> descendants(NodeId v) const;

  void require_node(NodeId v) const;

private:
  friend class EpgBuilder;

  std::vector<double> weights_;
  std::vector<std::size_t> out_offsets_;
  std::vector<NodeId> out_targets_;
  std::vector<std::uint32_t> out_multiplicity_;
  std::vector<std::size_t> in_offsets_;
  std::vector<NodeId> in_sources_;
  std::uint64_t reference_count_ = 0;
};

}  // namespace epg
