#include "epg/fault.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "epg/rng.hpp"

namespace epg {

namespace {

// Forward push over out-edges; mark[u] == v+1 flags reachability from v.
// Sums weights in ascending node order, matching the impact backends bit for
// bit. A non-null sink also collects the corrupted set.
double worst_observed(const SealedEpg& g, NodeId v, std::vector<NodeId>& mark,
                      std::vector<NodeId>* corrupted) {
  const auto& weights = g.local_weights();
  const auto n = static_cast<NodeId>(g.node_count());
  const NodeId stamp = v + 1;
  mark[v] = stamp;
  double acc = 0.0;
  for (NodeId u = v; u < n; ++u) {
    if (mark[u] != stamp) continue;
    acc += weights[u];
    if (corrupted != nullptr) corrupted->push_back(u);
    for (const NodeId w : g.out_neighbors(u)) mark[w] = stamp;
  }
  return acc;
}

void require_estimates(const SealedEpg& g, const ImpactVector& estimated) {
  if (estimated.size() != g.node_count())
    throw InvalidParamsError("estimate vector does not match the graph");
}

}  // namespace

InjectionOutcome inject_worst(const SealedEpg& g, NodeId v) {
  return inject_worst(g, v, impact_exact(g));
}

InjectionOutcome inject_worst(const SealedEpg& g, NodeId v, const ImpactVector& estimated) {
  g.require_node(v);
  require_estimates(g, estimated);
  InjectionOutcome outcome;
  outcome.injected = v;
  std::vector<NodeId> mark(g.node_count(), 0);
  outcome.impact_observed = worst_observed(g, v, mark, &outcome.corrupted);
  outcome.impact_estimated = estimated[v];
  return outcome;
}

InjectionOutcome inject_prob(const SealedEpg& g, NodeId v, double p, std::uint64_t seed) {
  return inject_prob(g, v, p, seed, impact_exact(g));
}

InjectionOutcome inject_prob(const SealedEpg& g, NodeId v, double p, std::uint64_t seed,
                             const ImpactVector& estimated) {
  g.require_node(v);
  require_estimates(g, estimated);
  if (!(p >= 0.0 && p <= 1.0))
    throw InvalidProbabilityError("propagation probability must lie in [0, 1]");

  const auto n = static_cast<NodeId>(g.node_count());
  const auto& weights = g.local_weights();
  Rng rng(seed);

  InjectionOutcome outcome;
  outcome.injected = v;
  outcome.impact_estimated = estimated[v];

  std::vector<char> corrupted(n, 0);
  corrupted[v] = 1;
  outcome.corrupted.push_back(v);
  outcome.impact_observed = weights[v];
  for (NodeId u = v + 1; u < n; ++u) {
    bool hit = false;
    for (const NodeId w : g.in_neighbors(u)) {
      if (!corrupted[w]) continue;
      // No short-circuit: one draw per corrupted in-edge keeps the stream
      // aligned whatever earlier edges did.
      if (rng.bernoulli(p)) hit = true;
    }
    if (!hit) continue;
    corrupted[u] = 1;
    outcome.corrupted.push_back(u);
    outcome.impact_observed += weights[u];
  }
  return outcome;
}

SweepResult sweep(const SealedEpg& g, unsigned threads) {
  const std::size_t n = g.node_count();
  SweepResult result;
  result.estimated = impact_exact(g);
  result.observed.assign(n, 0.0);
  if (n == 0) return result;

  unsigned t = threads != 0 ? threads : std::thread::hardware_concurrency();
  t = std::clamp<unsigned>(t, 1, static_cast<unsigned>(std::min<std::size_t>(n, 64)));

  const auto worker = [&](unsigned id) {
    std::vector<NodeId> mark(n, 0);
    for (std::size_t v = id; v < n; v += t)
      result.observed[v] = worst_observed(g, static_cast<NodeId>(v), mark, nullptr);
  };
  std::vector<std::thread> pool;
  pool.reserve(t - 1);
  for (unsigned id = 1; id < t; ++id) pool.emplace_back(worker, id);
  worker(0);
  for (auto& th : pool) th.join();

  for (std::size_t v = 0; v < n; ++v)
    if (result.observed[v] != result.estimated[v]) result.mismatches.push_back(static_cast<NodeId>(v));
  return result;
}

}  // namespace epg
