#pragma once

#include <cstdint>
#include <vector>

#include "epg/graph.hpp"
#include "epg/impact.hpp"

namespace epg {

/// Result of one injection experiment.
struct InjectionOutcome {
  NodeId injected = 0;
  /// Every node the error reached, ascending, the injected node included.
  std::vector<NodeId> corrupted;
  /// Sum of local weights over corrupted.
  double impact_observed = 0.0;
  /// The exact-backend bound for the injected node.
  double impact_estimated = 0.0;
};

/// Worst-case propagation: every consumer of a corrupted node corrupts. The
/// observed impact equals the estimate by construction of the bound.
InjectionOutcome inject_worst(const SealedEpg& g, NodeId v);
InjectionOutcome inject_worst(const SealedEpg& g, NodeId v, const ImpactVector& estimated);

/// Probabilistic propagation: walking nodes above v in index order, each edge
/// from an already-corrupted producer fires independently with probability p
/// (one draw per distinct edge, ascending source order, no short-circuit);
/// the node corrupts if any of its edges fired. p=1 reproduces inject_worst,
/// p=0 corrupts nothing beyond v. Observed impact never exceeds the estimate.
InjectionOutcome inject_prob(const SealedEpg& g, NodeId v, double p, std::uint64_t seed);
InjectionOutcome inject_prob(const SealedEpg& g, NodeId v, double p, std::uint64_t seed,
                             const ImpactVector& estimated);

/// Worst-case injection into every node, compared against the exact bound.
struct SweepResult {
  ImpactVector estimated;
  ImpactVector observed;
  /// Nodes where observed != estimated; empty when the bound is tight.
  std::vector<NodeId> mismatches;
};

/// threads == 0 picks the hardware concurrency. The result does not depend on
/// the thread count.
SweepResult sweep(const SealedEpg& g, unsigned threads = 0);

}  // namespace epg
