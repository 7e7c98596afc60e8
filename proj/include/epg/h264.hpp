#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <variant>
#include <vector>

#include "epg/errors.hpp"

namespace epg::h264 {

inline constexpr int kMbPixels = 16;

struct MbPos {
  std::uint32_t x = 0;
  std::uint32_t y = 0;

  friend bool operator==(const MbPos&, const MbPos&) = default;

  // Scanline order: rows first, then columns.
  friend bool operator<(const MbPos& a, const MbPos& b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  }
};

struct FrameGrid {
  std::uint32_t width_mb = 0;
  std::uint32_t height_mb = 0;

  bool contains(MbPos p) const { return p.x < width_mb && p.y < height_mb; }
  std::uint64_t mb_count() const {
    return static_cast<std::uint64_t>(width_mb) * height_mb;
  }

  friend bool operator==(const FrameGrid&, const FrameGrid&) = default;
};

/// The four neighbors an intra-predicted macroblock may read, in scanline
/// order of their positions.
enum class IntraNeighbor : std::uint8_t { TopLeft = 0, Top = 1, TopRight = 2, Left = 3 };

/// Subset of the intra reference directions.
class IntraRefs {
public:
  IntraRefs() = default;
  IntraRefs(std::initializer_list<IntraNeighbor> list) {
    for (const auto n : list) add(n);
  }

  static IntraRefs all() {
    return {IntraNeighbor::TopLeft, IntraNeighbor::Top, IntraNeighbor::TopRight,
            IntraNeighbor::Left};
  }

  void add(IntraNeighbor n) { bits_ |= mask(n); }
  bool has(IntraNeighbor n) const { return (bits_ & mask(n)) != 0; }
  int count() const { return std::popcount(bits_); }
  std::uint8_t raw() const { return bits_; }

  friend bool operator==(const IntraRefs&, const IntraRefs&) = default;

private:
  static constexpr std::uint8_t mask(IntraNeighbor n) {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(n));
  }

  std::uint8_t bits_ = 0;
};

/// One motion-compensated rectangle of a macroblock. Offsets and sizes are in
/// pixels relative to the macroblock origin; motion vectors are in
/// quarter-pel units; ref_offset selects the ref_offset-th previously decoded
/// frame.
struct InterPartition {
  int x_off = 0;
  int y_off = 0;
  int width = kMbPixels;
  int height = kMbPixels;
  int ref_offset = 1;
  int mv_qx = 0;
  int mv_qy = 0;

  friend bool operator==(const InterPartition&, const InterPartition&) = default;
};

/// Legal partition sizes: 16x16, 16x8, 8x16, 8x8, 8x4, 4x8, 4x4.
bool is_legal_partition_size(int width, int height);

/// Throws InvalidPartitionError unless the partition has a legal size, lies
/// inside the macroblock, and references a past frame.
void validate_partition(const InterPartition& p);

using InterPartitions = std::vector<InterPartition>;
using Prediction = std::variant<IntraRefs, InterPartitions>;

/// Full-pel pixels added on each side of a sample window axis when the motion
/// vector is fractional on that axis, covering the six-tap half-pel
/// interpolation support.
struct InterpolationMargin {
  int before = 2;
  int after = 3;
};
inline constexpr InterpolationMargin kSixTapMargin{};

/// Neighbor macroblocks an intra-predicted block at pos reads, clipped to the
/// grid, in scanline order. At most four, all strictly before pos.
std::vector<MbPos> intra_edges(const FrameGrid& grid, MbPos pos, IntraRefs refs);

/// Macroblocks of the reference frame overlapped by the partition's sample
/// window. The window is the partition rectangle displaced by the full-pel
/// part of the motion vector, widened by the margin on each fractional axis,
/// then clamped to the frame (edge extension: out-of-frame samples come from
/// border pixels, so coverage never leaves the grid).
std::vector<MbPos> inter_coverage(const FrameGrid& grid, MbPos mb, const InterPartition& p,
                                  InterpolationMargin margin = kSixTapMargin);

}  // namespace epg::h264
