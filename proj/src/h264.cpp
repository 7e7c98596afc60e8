#include "epg/h264.hpp"

#include <algorithm>
#include <string>

namespace epg::h264 {

namespace {

std::int64_t floor_div4(std::int64_t a) { return a >= 0 ? a / 4 : -((-a + 3) / 4); }

std::string pos_string(MbPos p) {
  return "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
}

}  // namespace

bool is_legal_partition_size(int width, int height) {
  switch (width) {
    case 16:
      return height == 16 || height == 8;
    case 8:
      return height == 16 || height == 8 || height == 4;
    case 4:
      return height == 8 || height == 4;
    default:
      return false;
  }
}

void validate_partition(const InterPartition& p) {
  if (!is_legal_partition_size(p.width, p.height))
    throw InvalidPartitionError("illegal partition size " + std::to_string(p.width) + "x" +
                                std::to_string(p.height));
  if (p.x_off < 0 || p.y_off < 0 || p.x_off + p.width > kMbPixels ||
      p.y_off + p.height > kMbPixels)
    throw InvalidPartitionError("partition rectangle leaves the macroblock: offset (" +
                                std::to_string(p.x_off) + ", " + std::to_string(p.y_off) +
                                ") size " + std::to_string(p.width) + "x" +
                                std::to_string(p.height));
  if (p.ref_offset < 1)
    throw InvalidPartitionError("ref_offset must be at least 1, got " +
                                std::to_string(p.ref_offset));
}

std::vector<MbPos> intra_edges(const FrameGrid& grid, MbPos pos, IntraRefs refs) {
  if (!grid.contains(pos))
    throw OutOfGridError("macroblock " + pos_string(pos) + " outside " +
                         std::to_string(grid.width_mb) + "x" + std::to_string(grid.height_mb) +
                         " grid");
  std::vector<MbPos> out;
  const std::int64_t x = pos.x;
  const std::int64_t y = pos.y;
  const auto push_if = [&](IntraNeighbor n, std::int64_t nx, std::int64_t ny) {
    if (!refs.has(n)) return;
    if (nx < 0 || ny < 0 || nx >= grid.width_mb || ny >= grid.height_mb) return;
    out.push_back({static_cast<std::uint32_t>(nx), static_cast<std::uint32_t>(ny)});
  };
  // Emitted in scanline order of the neighbor positions.
  push_if(IntraNeighbor::TopLeft, x - 1, y - 1);
  push_if(IntraNeighbor::Top, x, y - 1);
  push_if(IntraNeighbor::TopRight, x + 1, y - 1);
  push_if(IntraNeighbor::Left, x - 1, y);
  return out;
}

std::vector<MbPos> inter_coverage(const FrameGrid& grid, MbPos mb, const InterPartition& p,
                                  InterpolationMargin margin) {
  if (!grid.contains(mb))
    throw OutOfGridError("macroblock " + pos_string(mb) + " outside " +
                         std::to_string(grid.width_mb) + "x" + std::to_string(grid.height_mb) +
                         " grid");
  validate_partition(p);
  if (margin.before < 0 || margin.after < 0)
    throw InvalidParamsError("interpolation margin must be non-negative");

  const std::int64_t base_x = std::int64_t{kMbPixels} * mb.x + p.x_off + floor_div4(p.mv_qx);
  const std::int64_t base_y = std::int64_t{kMbPixels} * mb.y + p.y_off + floor_div4(p.mv_qy);
  const bool frac_x = (p.mv_qx % 4) != 0;
  const bool frac_y = (p.mv_qy % 4) != 0;

  std::int64_t x0 = base_x - (frac_x ? margin.before : 0);
  std::int64_t x1 = base_x + p.width - 1 + (frac_x ? margin.after : 0);
  std::int64_t y0 = base_y - (frac_y ? margin.before : 0);
  std::int64_t y1 = base_y + p.height - 1 + (frac_y ? margin.after : 0);

  const std::int64_t max_px = std::int64_t{kMbPixels} * grid.width_mb - 1;
  const std::int64_t max_py = std::int64_t{kMbPixels} * grid.height_mb - 1;
  x0 = std::clamp<std::int64_t>(x0, 0, max_px);
  x1 = std::clamp<std::int64_t>(x1, 0, max_px);
  y0 = std::clamp<std::int64_t>(y0, 0, max_py);
  y1 = std::clamp<std::int64_t>(y1, 0, max_py);

  const auto mbx0 = static_cast<std::uint32_t>(x0 / kMbPixels);
  const auto mbx1 = static_cast<std::uint32_t>(x1 / kMbPixels);
  const auto mby0 = static_cast<std::uint32_t>(y0 / kMbPixels);
  const auto mby1 = static_cast<std::uint32_t>(y1 / kMbPixels);

  std::vector<MbPos> out;
  out.reserve(static_cast<std::size_t>(mbx1 - mbx0 + 1) * (mby1 - mby0 + 1));
  for (std::uint32_t yy = mby0; yy <= mby1; ++yy)
    for (std::uint32_t xx = mbx0; xx <= mbx1; ++xx) out.push_back({xx, yy});
  return out;
}

}  // namespace epg::h264
