#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "epg/h264.hpp"

namespace epg::trace {

/// `F` line: opens a frame. An IDR frame depends on nothing earlier and seals
/// the running epoch.
struct FrameStart {
  std::uint32_t frame_idx = 0;
  bool idr = false;
  std::uint32_t width_mb = 0;
  std::uint32_t height_mb = 0;

  friend bool operator==(const FrameStart&, const FrameStart&) = default;
};

/// `I` or `P` line: one macroblock of the open frame, in scanline order.
struct MbRecord {
  h264::MbPos pos;
  h264::Prediction prediction;

  friend bool operator==(const MbRecord&, const MbRecord&) = default;
};

using TraceRecord = std::variant<FrameStart, MbRecord>;

inline constexpr std::string_view kTraceHeader = "epgtrace v1";

/// Grid dimensions accepted in a trace; keeps per-frame node counts sane.
inline constexpr std::uint32_t kMaxGridMb = 65536;

/// Line-oriented UTF-8, LF endings, single spaces, fixed key order:
///
///   epgtrace v1
///   F idx=0 idr=1 w=2 h=2
///   I x=0 y=0 refs=
///   I x=1 y=0 refs=TL,T,L
///   P x=0 y=1 parts=2
///     p xo=0 yo=0 w=16 h=8 ref=1 mvx=-3 mvy=17
///     p xo=0 yo=8 w=16 h=8 ref=1 mvx=0 mvy=4
///
/// Unknown tags, unknown keys, missing or extra fields are rejected. Errors
/// carry the offending line number. Empty input parses to an empty record
/// list.
std::vector<TraceRecord> parse_trace(std::istream& in);
std::vector<TraceRecord> parse_trace_file(const std::string& path);

/// Writes the canonical form parsed back by parse_trace; runs the same
/// sequence validation, reporting the 1-based record index as the line. An
/// empty record list writes an empty stream.
void write_trace(const std::vector<TraceRecord>& records, std::ostream& out);
void write_trace_file(const std::vector<TraceRecord>& records, const std::string& path);

/// Layouts the generator draws for inter-predicted macroblocks. MixedSub8x8
/// splits each 8x8 quadrant independently into 8x8, 8x4 pairs, 4x8 pairs, or
/// 4x4 quads.
enum class PartitionLayout : std::uint8_t {
  Single16x16 = 0,
  Halves16x8 = 1,
  Halves8x16 = 2,
  Quads8x8 = 3,
  MixedSub8x8 = 4,
};
inline constexpr std::size_t kPartitionLayoutCount = 5;

struct GenParams {
  std::uint32_t frames = 150;
  std::uint32_t width_mb = 40;
  std::uint32_t height_mb = 30;
  std::uint32_t gop_length = 30;
  double p_intra_in_p_frame = 0.1;
  std::uint32_t mv_range_qpel = 64;
  /// Weights over PartitionLayout in enum order; need not sum to 1.
  std::vector<double> partition_mix = {0.3, 0.15, 0.15, 0.2, 0.2};
  std::uint64_t seed = 42;
};

/// Throws InvalidParamsError on out-of-range fields.
void validate_params(const GenParams& params);

/// Deterministic synthetic trace: frame 0 is an IDR, then every gop_length-th
/// frame. IDR frames are all-intra; other frames flip a p_intra coin per
/// macroblock and otherwise draw a partition layout and quarter-pel motion
/// vectors in [-mv_range_qpel, +mv_range_qpel], always referencing the
/// previous frame. Same params, same bytes, on every platform.
std::vector<TraceRecord> generate_trace(const GenParams& params);

}  // namespace epg::trace
