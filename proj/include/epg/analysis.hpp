#pragma once

#include <vector>

#include "epg/graph.hpp"
#include "epg/impact.hpp"
#include "epg/report.hpp"
#include "epg/trace.hpp"

namespace epg::h264 {

/// One IDR-delimited epoch: the sealed dependency graph plus its impact
/// report. report.rows[i] labels node i.
struct EpochResult {
  SealedEpg graph;
  ImpactReport report;
};

/// Folds a record stream into one graph per epoch. Every macroblock becomes a
/// node of weight 1; intra macroblocks get edges from their referenced
/// neighbors in the same frame, inter partitions from every covered
/// macroblock of the referenced earlier frame. An IDR frame seals the running
/// epoch and starts the next one, so no edge crosses an IDR.
///
/// Throws NonScanlineOrderError, GridMismatchError, RefCrossesIdrError,
/// OutOfGridError or InvalidPartitionError on streams that violate the model;
/// streams from parse_trace or generate_trace never do.
std::vector<EpochResult> build_epgs(const std::vector<trace::TraceRecord>& records,
                                    ImpactBackend backend = ImpactBackend::Exact,
                                    std::size_t chunk_nodes = kDefaultChunkNodes);

}  // namespace epg::h264
