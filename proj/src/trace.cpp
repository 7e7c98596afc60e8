#include "epg/trace.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <utility>

#include "epg/rng.hpp"

namespace epg::trace {

namespace {

constexpr std::string_view kRefsNames[4] = {"TL", "T", "TR", "L"};

// ---- lexing ----------------------------------------------------------------

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> toks;
  std::size_t start = 0;
  while (true) {
    const auto sp = line.find(' ', start);
    if (sp == std::string_view::npos) {
      toks.push_back(line.substr(start));
      return toks;
    }
    toks.push_back(line.substr(start, sp - start));
    start = sp + 1;
  }
}

std::string_view expect_kv(std::string_view tok, std::string_view key, std::size_t line) {
  if (tok.size() > key.size() && tok.substr(0, key.size()) == key && tok[key.size()] == '=')
    return tok.substr(key.size() + 1);
  const auto eq = tok.find('=');
  if (eq == std::string_view::npos)
    throw TraceSyntaxError(line, "malformed token '" + std::string(tok) + "', expected '" +
                                     std::string(key) + "=<value>'");
  throw TraceSchemaError(line, "unexpected key '" + std::string(tok.substr(0, eq)) +
                                   "', expected '" + std::string(key) + "'");
}

std::int64_t expect_int(std::string_view tok, std::string_view key, std::size_t line) {
  const std::string_view val = expect_kv(tok, key, line);
  std::int64_t out{};
  const auto* end = val.data() + val.size();
  const auto [ptr, ec] = std::from_chars(val.data(), end, out);
  if (val.empty() || ec != std::errc{} || ptr != end)
    throw TraceSyntaxError(line, "invalid integer for '" + std::string(key) + "'");
  return out;
}

std::int64_t require_range(std::int64_t v, std::int64_t lo, std::int64_t hi,
                           std::string_view key, std::size_t line) {
  if (v < lo || v > hi)
    throw TraceSchemaError(line, "'" + std::string(key) + "' out of range [" +
                                     std::to_string(lo) + ", " + std::to_string(hi) + "], got " +
                                     std::to_string(v));
  return v;
}

void expect_token_count(const std::vector<std::string_view>& toks, std::size_t want,
                        std::string_view what, std::size_t line) {
  if (toks.size() != want)
    throw TraceSyntaxError(line, std::string(what) + " takes " + std::to_string(want - 1) +
                                     " fields, got " + std::to_string(toks.size() - 1));
}

// ---- record parsing ---------------------------------------------------------

FrameStart parse_frame_line(const std::vector<std::string_view>& toks, std::size_t line) {
  expect_token_count(toks, 5, "'F' record", line);
  FrameStart f;
  f.frame_idx = static_cast<std::uint32_t>(require_range(
      expect_int(toks[1], "idx", line), 0, std::numeric_limits<std::uint32_t>::max(), "idx",
      line));
  const auto idr = expect_int(toks[2], "idr", line);
  if (idr != 0 && idr != 1) throw TraceSchemaError(line, "'idr' must be 0 or 1");
  f.idr = idr == 1;
  f.width_mb = static_cast<std::uint32_t>(
      require_range(expect_int(toks[3], "w", line), 1, kMaxGridMb, "w", line));
  f.height_mb = static_cast<std::uint32_t>(
      require_range(expect_int(toks[4], "h", line), 1, kMaxGridMb, "h", line));
  return f;
}

h264::MbPos parse_pos(const std::vector<std::string_view>& toks, std::size_t line) {
  h264::MbPos pos;
  pos.x = static_cast<std::uint32_t>(
      require_range(expect_int(toks[1], "x", line), 0, kMaxGridMb - 1, "x", line));
  pos.y = static_cast<std::uint32_t>(
      require_range(expect_int(toks[2], "y", line), 0, kMaxGridMb - 1, "y", line));
  return pos;
}

h264::IntraRefs parse_refs(std::string_view val, std::size_t line) {
  h264::IntraRefs refs;
  if (val.empty()) return refs;
  std::size_t start = 0;
  while (true) {
    const auto comma = val.find(',', start);
    const std::string_view name = comma == std::string_view::npos
                                      ? val.substr(start)
                                      : val.substr(start, comma - start);
    bool found = false;
    for (unsigned i = 0; i < 4; ++i) {
      if (name != kRefsNames[i]) continue;
      const auto n = static_cast<h264::IntraNeighbor>(i);
      if (refs.has(n))
        throw TraceSchemaError(line, "duplicate refs token '" + std::string(name) + "'");
      refs.add(n);
      found = true;
      break;
    }
    if (!found)
      throw TraceSchemaError(line, "unknown refs token '" + std::string(name) +
                                       "', expected TL, T, TR or L");
    if (comma == std::string_view::npos) return refs;
    start = comma + 1;
  }
}

MbRecord parse_intra_line(const std::vector<std::string_view>& toks, std::size_t line) {
  expect_token_count(toks, 4, "'I' record", line);
  MbRecord mb;
  mb.pos = parse_pos(toks, line);
  mb.prediction = parse_refs(expect_kv(toks[3], "refs", line), line);
  return mb;
}

h264::InterPartition parse_partition_line(const std::vector<std::string_view>& toks,
                                          std::size_t line) {
  expect_token_count(toks, 8, "'p' record", line);
  if (toks[0] != "p")
    throw TraceSyntaxError(line, "expected partition tag 'p', got '" + std::string(toks[0]) +
                                     "'");
  h264::InterPartition p;
  p.x_off = static_cast<int>(require_range(expect_int(toks[1], "xo", line), 0, 15, "xo", line));
  p.y_off = static_cast<int>(require_range(expect_int(toks[2], "yo", line), 0, 15, "yo", line));
  p.width = static_cast<int>(require_range(expect_int(toks[3], "w", line), 1, 16, "w", line));
  p.height = static_cast<int>(require_range(expect_int(toks[4], "h", line), 1, 16, "h", line));
  p.ref_offset = static_cast<int>(require_range(expect_int(toks[5], "ref", line), 1,
                                                std::numeric_limits<int>::max(), "ref", line));
  const auto mv_lo = std::numeric_limits<int>::min();
  const auto mv_hi = std::numeric_limits<int>::max();
  p.mv_qx = static_cast<int>(require_range(expect_int(toks[6], "mvx", line), mv_lo, mv_hi,
                                           "mvx", line));
  p.mv_qy = static_cast<int>(require_range(expect_int(toks[7], "mvy", line), mv_lo, mv_hi,
                                           "mvy", line));
  if (!h264::is_legal_partition_size(p.width, p.height))
    throw TraceSchemaError(line, "illegal partition size " + std::to_string(p.width) + "x" +
                                     std::to_string(p.height));
  if (p.x_off + p.width > h264::kMbPixels || p.y_off + p.height > h264::kMbPixels)
    throw TraceSchemaError(line, "partition rectangle leaves the macroblock");
  return p;
}

// ---- sequence validation -----------------------------------------------------

// Field-level checks shared by parser and writer. The parser has already
// enforced most of them lexically; the writer path relies on these.
void validate_prediction(const h264::Prediction& pred, std::size_t line) {
  const auto* parts = std::get_if<h264::InterPartitions>(&pred);
  if (parts == nullptr) return;
  if (parts->empty() || parts->size() > 16)
    throw TraceSchemaError(line, "'parts' out of range [1, 16], got " +
                                     std::to_string(parts->size()));
  bool cell[h264::kMbPixels][h264::kMbPixels] = {};
  for (const auto& p : *parts) {
    if (!h264::is_legal_partition_size(p.width, p.height))
      throw TraceSchemaError(line, "illegal partition size " + std::to_string(p.width) + "x" +
                                       std::to_string(p.height));
    if (p.x_off < 0 || p.y_off < 0 || p.x_off + p.width > h264::kMbPixels ||
        p.y_off + p.height > h264::kMbPixels)
      throw TraceSchemaError(line, "partition rectangle leaves the macroblock");
    if (p.ref_offset < 1) throw TraceSchemaError(line, "'ref' must be at least 1");
    for (int y = p.y_off; y < p.y_off + p.height; ++y) {
      for (int x = p.x_off; x < p.x_off + p.width; ++x) {
        if (cell[y][x]) throw TraceSchemaError(line, "partitions overlap");
        cell[y][x] = true;
      }
    }
  }
  for (const auto& row : cell)
    for (const bool c : row)
      if (!c) throw TraceSchemaError(line, "partitions do not tile the macroblock");
}

class SequenceChecker {
public:
  void on_frame(const FrameStart& f, std::size_t line) {
    if (f.width_mb < 1 || f.width_mb > kMaxGridMb || f.height_mb < 1 ||
        f.height_mb > kMaxGridMb)
      throw TraceSchemaError(line, "frame dimensions out of range [1, " +
                                       std::to_string(kMaxGridMb) + "]");
    if (!any_record_ && !f.idr)
      throw TraceOrderError(line, "first frame must be an IDR frame");
    require_frame_complete(line);
    grid_ = {f.width_mb, f.height_mb};
    mb_total_ = grid_.mb_count();
    mb_seen_ = 0;
    in_frame_ = true;
    any_record_ = true;
  }

  void on_mb(const MbRecord& m, std::size_t line) {
    if (!in_frame_)
      throw TraceOrderError(line, "macroblock record before any frame start");
    if (mb_seen_ >= mb_total_)
      throw TraceOrderError(line, "more macroblocks than the " +
                                      std::to_string(grid_.width_mb) + "x" +
                                      std::to_string(grid_.height_mb) + " frame holds");
    if (!grid_.contains(m.pos))
      throw TraceSchemaError(line, "macroblock (" + std::to_string(m.pos.x) + ", " +
                                       std::to_string(m.pos.y) + ") outside the " +
                                       std::to_string(grid_.width_mb) + "x" +
                                       std::to_string(grid_.height_mb) + " grid");
    const h264::MbPos expect{static_cast<std::uint32_t>(mb_seen_ % grid_.width_mb),
                             static_cast<std::uint32_t>(mb_seen_ / grid_.width_mb)};
    if (!(m.pos == expect))
      throw TraceOrderError(line, "macroblock out of scanline order: expected (" +
                                      std::to_string(expect.x) + ", " +
                                      std::to_string(expect.y) + "), got (" +
                                      std::to_string(m.pos.x) + ", " +
                                      std::to_string(m.pos.y) + ")");
    validate_prediction(m.prediction, line);
    ++mb_seen_;
    any_record_ = true;
  }

  void finish(std::size_t line) { require_frame_complete(line); }

private:
  void require_frame_complete(std::size_t line) const {
    if (in_frame_ && mb_seen_ != mb_total_)
      throw TraceOrderError(line, "frame incomplete: " + std::to_string(mb_seen_) + " of " +
                                      std::to_string(mb_total_) + " macroblocks seen");
  }

  h264::FrameGrid grid_;
  std::uint64_t mb_total_ = 0;
  std::uint64_t mb_seen_ = 0;
  bool in_frame_ = false;
  bool any_record_ = false;
};

}  // namespace

// ---- parser -------------------------------------------------------------------

std::vector<TraceRecord> parse_trace(std::istream& in) {
  std::vector<TraceRecord> records;
  SequenceChecker seq;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;

  MbRecord pending;
  std::size_t pending_line = 0;
  std::size_t remaining_parts = 0;

  while (std::getline(in, line)) {
    ++lineno;
    if (!header_seen) {
      if (line != kTraceHeader)
        throw TraceSyntaxError(lineno, "expected header '" + std::string(kTraceHeader) + "'");
      header_seen = true;
      continue;
    }
    if (line.starts_with("  ")) {
      if (remaining_parts == 0)
        throw TraceSyntaxError(lineno, "unexpected partition line");
      const auto toks = split_tokens(std::string_view(line).substr(2));
      std::get<h264::InterPartitions>(pending.prediction)
          .push_back(parse_partition_line(toks, lineno));
      if (--remaining_parts == 0) {
        seq.on_mb(pending, pending_line);
        records.emplace_back(std::move(pending));
        pending = {};
      }
      continue;
    }
    if (remaining_parts > 0)
      throw TraceSyntaxError(lineno, "expected a '  p ...' partition line");

    const auto toks = split_tokens(line);
    if (toks[0] == "F") {
      const FrameStart f = parse_frame_line(toks, lineno);
      seq.on_frame(f, lineno);
      records.emplace_back(f);
    } else if (toks[0] == "I") {
      MbRecord mb = parse_intra_line(toks, lineno);
      seq.on_mb(mb, lineno);
      records.emplace_back(std::move(mb));
    } else if (toks[0] == "P") {
      expect_token_count(toks, 4, "'P' record", lineno);
      pending = {};
      pending.pos = parse_pos(toks, lineno);
      const auto parts = require_range(expect_int(toks[3], "parts", lineno), 1, 16, "parts",
                                       lineno);
      h264::InterPartitions list;
      list.reserve(static_cast<std::size_t>(parts));
      pending.prediction = std::move(list);
      remaining_parts = static_cast<std::size_t>(parts);
      pending_line = lineno;
    } else {
      throw TraceSyntaxError(lineno, "unknown record type '" + std::string(toks[0]) + "'");
    }
  }
  if (remaining_parts > 0)
    throw TraceSyntaxError(lineno, "trace ends inside a partition list");
  seq.finish(lineno);
  return records;
}

std::vector<TraceRecord> parse_trace_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open trace file '" + path + "'");
  return parse_trace(in);
}

// ---- writer --------------------------------------------------------------------

namespace {

void append_int(std::string& out, std::int64_t v) {
  char buf[24];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

void write_record(std::string& out, const TraceRecord& rec) {
  if (const auto* f = std::get_if<FrameStart>(&rec)) {
    out += "F idx=";
    append_int(out, f->frame_idx);
    out += " idr=";
    out += f->idr ? '1' : '0';
    out += " w=";
    append_int(out, f->width_mb);
    out += " h=";
    append_int(out, f->height_mb);
    out += '\n';
    return;
  }
  const auto& mb = std::get<MbRecord>(rec);
  if (const auto* refs = std::get_if<h264::IntraRefs>(&mb.prediction)) {
    out += "I x=";
    append_int(out, mb.pos.x);
    out += " y=";
    append_int(out, mb.pos.y);
    out += " refs=";
    bool first = true;
    for (unsigned i = 0; i < 4; ++i) {
      if (!refs->has(static_cast<h264::IntraNeighbor>(i))) continue;
      if (!first) out += ',';
      out += kRefsNames[i];
      first = false;
    }
    out += '\n';
    return;
  }
  const auto& parts = std::get<h264::InterPartitions>(mb.prediction);
  out += "P x=";
  append_int(out, mb.pos.x);
  out += " y=";
  append_int(out, mb.pos.y);
  out += " parts=";
  append_int(out, static_cast<std::int64_t>(parts.size()));
  out += '\n';
  for (const auto& p : parts) {
    out += "  p xo=";
    append_int(out, p.x_off);
    out += " yo=";
    append_int(out, p.y_off);
    out += " w=";
    append_int(out, p.width);
    out += " h=";
    append_int(out, p.height);
    out += " ref=";
    append_int(out, p.ref_offset);
    out += " mvx=";
    append_int(out, p.mv_qx);
    out += " mvy=";
    append_int(out, p.mv_qy);
    out += '\n';
  }
}

}  // namespace

void write_trace(const std::vector<TraceRecord>& records, std::ostream& out) {
  if (records.empty()) return;
  constexpr std::size_t kFlushAt = (std::size_t{1} << 16) - 512;
  SequenceChecker seq;
  std::string buf;
  buf.reserve(std::size_t{1} << 16);
  buf += kTraceHeader;
  buf += '\n';
  std::size_t idx = 0;
  for (const auto& rec : records) {
    ++idx;  // record index stands in for the line number in writer errors
    if (const auto* f = std::get_if<FrameStart>(&rec))
      seq.on_frame(*f, idx);
    else
      seq.on_mb(std::get<MbRecord>(rec), idx);
    write_record(buf, rec);
    if (buf.size() >= kFlushAt) {
      out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
      buf.clear();
    }
  }
  seq.finish(idx);
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void write_trace_file(const std::vector<TraceRecord>& records, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file '" + path + "'");
  write_trace(records, out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

// ---- generator -------------------------------------------------------------------

void validate_params(const GenParams& p) {
  if (p.frames < 1) throw InvalidParamsError("frames must be at least 1");
  if (p.width_mb < 1 || p.width_mb > kMaxGridMb)
    throw InvalidParamsError("width_mb out of range [1, " + std::to_string(kMaxGridMb) + "]");
  if (p.height_mb < 1 || p.height_mb > kMaxGridMb)
    throw InvalidParamsError("height_mb out of range [1, " + std::to_string(kMaxGridMb) + "]");
  if (p.gop_length < 1) throw InvalidParamsError("gop_length must be at least 1");
  if (!(p.p_intra_in_p_frame >= 0.0 && p.p_intra_in_p_frame <= 1.0))
    throw InvalidParamsError("p_intra_in_p_frame must lie in [0, 1]");
  if (p.mv_range_qpel > static_cast<std::uint32_t>(std::numeric_limits<int>::max()))
    throw InvalidParamsError("mv_range_qpel too large");
  if (p.partition_mix.size() != kPartitionLayoutCount)
    throw InvalidParamsError("partition_mix needs exactly " +
                             std::to_string(kPartitionLayoutCount) + " weights");
  double total = 0.0;
  for (const double w : p.partition_mix) {
    if (!(w >= 0.0) || !std::isfinite(w))
      throw InvalidParamsError("partition_mix weights must be finite and non-negative");
    total += w;
  }
  if (!(total > 0.0)) throw InvalidParamsError("partition_mix weights must not all be zero");
}

namespace {

h264::IntraRefs draw_intra_refs(Rng& rng, const h264::FrameGrid& grid, h264::MbPos pos) {
  h264::IntraNeighbor avail[4];
  unsigned count = 0;
  if (pos.x > 0 && pos.y > 0) avail[count++] = h264::IntraNeighbor::TopLeft;
  if (pos.y > 0) avail[count++] = h264::IntraNeighbor::Top;
  if (pos.x + 1 < grid.width_mb && pos.y > 0) avail[count++] = h264::IntraNeighbor::TopRight;
  if (pos.x > 0) avail[count++] = h264::IntraNeighbor::Left;
  // One draw regardless of availability keeps the stream shape fixed.
  const std::uint64_t mask = rng.next_below(std::uint64_t{1} << count);
  h264::IntraRefs refs;
  for (unsigned i = 0; i < count; ++i)
    if ((mask >> i) & 1u) refs.add(avail[i]);
  return refs;
}

PartitionLayout draw_layout(Rng& rng, const std::vector<double>& mix) {
  double total = 0.0;
  for (const double w : mix) total += w;
  const double r = rng.next_unit() * total;
  double cum = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t i = 0; i < mix.size(); ++i) {
    if (mix[i] > 0.0) last_nonzero = i;
  }
  for (std::size_t i = 0; i < mix.size(); ++i) {
    cum += mix[i];
    if (mix[i] > 0.0 && r < cum) return static_cast<PartitionLayout>(i);
  }
  return static_cast<PartitionLayout>(last_nonzero);
}

void append_rects(std::vector<h264::InterPartition>& parts, PartitionLayout layout, Rng& rng) {
  const auto rect = [&](int xo, int yo, int w, int h) {
    h264::InterPartition p;
    p.x_off = xo;
    p.y_off = yo;
    p.width = w;
    p.height = h;
    parts.push_back(p);
  };
  switch (layout) {
    case PartitionLayout::Single16x16:
      rect(0, 0, 16, 16);
      return;
    case PartitionLayout::Halves16x8:
      rect(0, 0, 16, 8);
      rect(0, 8, 16, 8);
      return;
    case PartitionLayout::Halves8x16:
      rect(0, 0, 8, 16);
      rect(8, 0, 8, 16);
      return;
    case PartitionLayout::Quads8x8:
      rect(0, 0, 8, 8);
      rect(8, 0, 8, 8);
      rect(0, 8, 8, 8);
      rect(8, 8, 8, 8);
      return;
    case PartitionLayout::MixedSub8x8: {
      constexpr std::pair<int, int> quadrants[4] = {{0, 0}, {8, 0}, {0, 8}, {8, 8}};
      for (const auto& [qx, qy] : quadrants) {
        switch (rng.next_below(4)) {
          case 0:
            rect(qx, qy, 8, 8);
            break;
          case 1:
            rect(qx, qy, 8, 4);
            rect(qx, qy + 4, 8, 4);
            break;
          case 2:
            rect(qx, qy, 4, 8);
            rect(qx + 4, qy, 4, 8);
            break;
          default:
            rect(qx, qy, 4, 4);
            rect(qx + 4, qy, 4, 4);
            rect(qx, qy + 4, 4, 4);
            rect(qx + 4, qy + 4, 4, 4);
            break;
        }
      }
      return;
    }
  }
  throw InvalidParamsError("unknown partition layout");
}

h264::InterPartitions draw_partitions(Rng& rng, const GenParams& params) {
  h264::InterPartitions parts;
  append_rects(parts, draw_layout(rng, params.partition_mix), rng);
  const auto range = static_cast<std::int64_t>(params.mv_range_qpel);
  for (auto& p : parts) {
    p.ref_offset = 1;
    p.mv_qx = static_cast<int>(rng.next_in(-range, range));
    p.mv_qy = static_cast<int>(rng.next_in(-range, range));
  }
  return parts;
}

}  // namespace

std::vector<TraceRecord> generate_trace(const GenParams& params) {
  validate_params(params);
  Rng rng(params.seed);
  const h264::FrameGrid grid{params.width_mb, params.height_mb};

  std::vector<TraceRecord> records;
  records.reserve(static_cast<std::size_t>(params.frames) * (grid.mb_count() + 1));
  for (std::uint32_t f = 0; f < params.frames; ++f) {
    const bool idr = (f % params.gop_length) == 0;
    records.emplace_back(FrameStart{f, idr, params.width_mb, params.height_mb});
    for (std::uint32_t y = 0; y < params.height_mb; ++y) {
      for (std::uint32_t x = 0; x < params.width_mb; ++x) {
        const h264::MbPos pos{x, y};
        const bool intra = idr || rng.bernoulli(params.p_intra_in_p_frame);
        MbRecord mb;
        mb.pos = pos;
        if (intra)
          mb.prediction = draw_intra_refs(rng, grid, pos);
        else
          mb.prediction = draw_partitions(rng, params);
        records.emplace_back(std::move(mb));
      }
    }
  }
  return records;
}

}  // namespace epg::trace
