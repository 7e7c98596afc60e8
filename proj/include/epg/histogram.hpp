#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "epg/errors.hpp"

namespace epg {

enum class YScale { Linear, Sqrt };

/// Either a fixed bin width or a fixed bin count; setting both is an error,
/// setting neither means width 1.
struct HistogramSpec {
  std::optional<double> bin_width;
  std::optional<std::size_t> bin_count;
  YScale y_scale = YScale::Sqrt;
};

/// Bins are [low, high) except the last, which closes at the maximum value.
struct HistogramRow {
  double low = 0.0;
  double high = 0.0;
  std::uint64_t count = 0;

  friend bool operator==(const HistogramRow&, const HistogramRow&) = default;
};

/// Empty input yields no rows. All-equal input collapses to a single bin.
std::vector<HistogramRow> compute_histogram(const std::vector<double>& values,
                                            const HistogramSpec& spec);

/// Bars of '#' scaled so the tallest reaches width characters; sqrt scaling
/// compresses tall spikes so the tail stays visible. The raw count follows
/// each bar.
std::string render_histogram(const std::vector<HistogramRow>& rows, YScale y_scale,
                             std::size_t width = 60);

inline constexpr const char* kHistogramCsvHeader = "bin_low,bin_high,count";

void write_histogram_csv(const std::vector<HistogramRow>& rows, std::ostream& out);

}  // namespace epg
