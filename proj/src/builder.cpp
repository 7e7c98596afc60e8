#include "epg/builder.hpp"

namespace epg {

NodeId Epoch::add_task(const TaskRecord& task) {
  if (sealed_) throw SealedEpochError("epoch is already sealed");
  for (const auto& in : task.inputs) {
    if (in == task.output)
      throw InvalidTaskError("task reads its own output channel '" + task.output + "'");
  }
  if (producer_.contains(task.output))
    throw ChannelRewriteError("channel '" + task.output + "' already has a producer");
  if (strict_) {
    for (const auto& in : task.inputs) {
      if (!producer_.contains(in))
        throw UnknownChannelError("no producer for input channel '" + in + "'");
    }
  }

  // Validation is done; nothing below can throw except add_node's weight
  // check, which fires before any state changes.
  const NodeId node = graph_.add_node(task.local_weight);
  for (const auto& in : task.inputs) {
    const auto it = producer_.find(in);
    if (it == producer_.end()) continue;  // external input
    graph_.add_edge(it->second, node);
  }
  producer_.emplace(task.output, node);
  return node;
}

std::pair<SealedEpg, ImpactVector> Epoch::seal(ImpactBackend backend) {
  if (sealed_) throw SealedEpochError("epoch is already sealed");
  sealed_ = true;
  SealedEpg g = graph_.seal();
  ImpactVector impacts = compute_impacts(g, backend);
  return {std::move(g), std::move(impacts)};
}

}  // namespace epg
