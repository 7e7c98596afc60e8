#include "epg/analysis.hpp"

#include <string>
#include <variant>

namespace epg::h264 {

namespace {

std::string grid_string(const FrameGrid& g) {
  return std::to_string(g.width_mb) + "x" + std::to_string(g.height_mb);
}

class EpochAssembler {
public:
  EpochAssembler(ImpactBackend backend, std::size_t chunk_nodes)
      : backend_(backend), chunk_nodes_(chunk_nodes) {}

  void on_frame(const trace::FrameStart& f) {
    require_frame_complete();
    if (f.width_mb < 1 || f.height_mb < 1)
      throw InvalidParamsError("frame dimensions must be positive");
    if (f.idr) {
      finish_epoch();
      grid_ = {f.width_mb, f.height_mb};
    } else if (open_) {
      const FrameGrid incoming{f.width_mb, f.height_mb};
      if (!(incoming == grid_))
        throw GridMismatchError("frame " + std::to_string(f.frame_idx) + " is " +
                                grid_string(incoming) + " but the epoch runs on " +
                                grid_string(grid_));
    } else {
      // Tolerated for hand-built streams; the parser enforces IDR-first.
      grid_ = {f.width_mb, f.height_mb};
    }
    open_ = true;
    frames_.emplace_back();
    frames_.back().reserve(grid_.mb_count());
    frame_idx_ = f.frame_idx;
    mb_seen_ = 0;
  }

  void on_mb(const trace::MbRecord& mb) {
    if (!open_) throw NonScanlineOrderError("macroblock record before any frame start");
    if (mb_seen_ >= grid_.mb_count())
      throw NonScanlineOrderError("more macroblocks than the " + grid_string(grid_) +
                                  " frame holds");
    const MbPos expect{static_cast<std::uint32_t>(mb_seen_ % grid_.width_mb),
                       static_cast<std::uint32_t>(mb_seen_ / grid_.width_mb)};
    if (!(mb.pos == expect))
      throw NonScanlineOrderError(
          "macroblock out of scanline order: expected (" + std::to_string(expect.x) + ", " +
          std::to_string(expect.y) + "), got (" + std::to_string(mb.pos.x) + ", " +
          std::to_string(mb.pos.y) + ")");

    const NodeId node = builder_.add_node(1.0);
    if (const auto* refs = std::get_if<IntraRefs>(&mb.prediction)) {
      for (const MbPos n : intra_edges(grid_, mb.pos, *refs))
        builder_.add_edge(node_at(frames_.size() - 1, n), node);
    } else {
      const auto& parts = std::get<InterPartitions>(mb.prediction);
      for (const auto& part : parts) {
        validate_partition(part);
        const auto current = static_cast<std::int64_t>(frames_.size()) - 1;
        const std::int64_t ref_frame = current - part.ref_offset;
        if (ref_frame < 0)
          throw RefCrossesIdrError("frame " + std::to_string(frame_idx_) + " macroblock (" +
                                   std::to_string(mb.pos.x) + ", " + std::to_string(mb.pos.y) +
                                   ") references " + std::to_string(part.ref_offset) +
                                   " frames back across the epoch start");
        for (const MbPos c : inter_coverage(grid_, mb.pos, part))
          builder_.add_edge(node_at(static_cast<std::size_t>(ref_frame), c), node);
      }
    }
    frames_.back().push_back(node);
    rows_.push_back({frame_idx_, mb.pos.x, mb.pos.y, 0.0});
    ++mb_seen_;
  }

  std::vector<EpochResult> finish() {
    require_frame_complete();
    finish_epoch();
    return std::move(results_);
  }

private:
  NodeId node_at(std::size_t frame, MbPos pos) const {
    return frames_[frame][static_cast<std::size_t>(pos.y) * grid_.width_mb + pos.x];
  }

  void require_frame_complete() const {
    if (open_ && mb_seen_ != grid_.mb_count())
      throw NonScanlineOrderError("frame incomplete: " + std::to_string(mb_seen_) + " of " +
                                  std::to_string(grid_.mb_count()) + " macroblocks seen");
  }

  void finish_epoch() {
    if (!open_) return;
    EpochResult result;
    result.graph = builder_.seal();
    const ImpactVector impacts = compute_impacts(result.graph, backend_, chunk_nodes_);
    for (std::size_t i = 0; i < rows_.size(); ++i) rows_[i].impact = impacts[i];
    result.report.epoch_idx = static_cast<std::uint32_t>(results_.size());
    result.report.rows = std::move(rows_);
    results_.push_back(std::move(result));

    builder_ = EpgBuilder{};
    frames_.clear();
    rows_ = {};
    open_ = false;
    mb_seen_ = 0;
  }

  ImpactBackend backend_;
  std::size_t chunk_nodes_;
  EpgBuilder builder_;
  FrameGrid grid_;
  std::vector<std::vector<NodeId>> frames_;  // node table per decoded frame of the epoch
  std::vector<ImpactReport::Row> rows_;
  std::vector<EpochResult> results_;
  std::uint32_t frame_idx_ = 0;
  std::uint64_t mb_seen_ = 0;
  bool open_ = false;
};

}  // namespace

std::vector<EpochResult> build_epgs(const std::vector<trace::TraceRecord>& records,
                                    ImpactBackend backend, std::size_t chunk_nodes) {
  EpochAssembler assembler(backend, chunk_nodes);
  for (const auto& rec : records) {
    if (const auto* f = std::get_if<trace::FrameStart>(&rec))
      assembler.on_frame(*f);
    else
      assembler.on_mb(std::get<trace::MbRecord>(rec));
  }
  return assembler.finish();
}

}  // namespace epg::h264
