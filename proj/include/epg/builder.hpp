#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "epg/graph.hpp"
#include "epg/impact.hpp"

namespace epg {

/// One task instance in a run-to-completion stream: the channels it reads,
/// the single channel it writes, and its local impact weight.
struct TaskRecord {
  std::vector<std::string> inputs;
  std::string output;
  double local_weight = 1.0;
};

/// Maps a task stream onto an error-propagation graph. Within an epoch every
/// channel has at most one producer; reading a channel nobody produced yet
/// means external application input, which adds no edge (or is rejected when
/// strict_channels is set). Listing the same input channel twice adds the
/// edge twice, which collapses into multiplicity 2.
class Epoch {
public:
  explicit Epoch(bool strict_channels = false) : strict_(strict_channels) {}

  /// Appends the task as a node plus one edge per input with a known
  /// producer, and registers the task as producer of its output channel.
  NodeId add_task(const TaskRecord& task);

  /// Seals the graph and computes impacts. The epoch is unusable afterwards.
  std::pair<SealedEpg, ImpactVector> seal(ImpactBackend backend = ImpactBackend::Exact);

  std::size_t node_count() const noexcept { return graph_.node_count(); }
  bool sealed() const noexcept { return sealed_; }

private:
  EpgBuilder graph_;
  std::unordered_map<std::string, NodeId> producer_;
  bool strict_;
  bool sealed_ = false;
};

}  // namespace epg
