#include "epg/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "epg/report.hpp"

namespace epg {

std::vector<HistogramRow> compute_histogram(const std::vector<double>& values,
                                            const HistogramSpec& spec) {
  if (spec.bin_width && spec.bin_count)
    throw InvalidParamsError("set a bin width or a bin count, not both");
  if (spec.bin_width && (!std::isfinite(*spec.bin_width) || *spec.bin_width <= 0.0))
    throw InvalidParamsError("bin width must be finite and positive");
  if (spec.bin_count && *spec.bin_count == 0)
    throw InvalidParamsError("bin count must be positive");

  if (values.empty()) return {};
  for (const double v : values)
    if (!std::isfinite(v)) throw InvalidParamsError("histogram values must be finite");

  const auto [mn_it, mx_it] = std::minmax_element(values.begin(), values.end());
  const double mn = *mn_it;
  const double mx = *mx_it;

  std::size_t bins;
  double width;
  if (spec.bin_count) {
    bins = *spec.bin_count;
    width = (mx - mn) / static_cast<double>(bins);
    if (!(width > 0.0)) bins = 1;  // all values equal
  } else {
    width = spec.bin_width.value_or(1.0);
    bins = mx == mn ? 1 : static_cast<std::size_t>(std::floor((mx - mn) / width)) + 1;
  }

  std::vector<HistogramRow> rows(bins);
  for (std::size_t i = 0; i < bins; ++i) {
    rows[i].low = mn + static_cast<double>(i) * width;
    rows[i].high = i + 1 < bins ? mn + static_cast<double>(i + 1) * width : mx;
  }
  rows.back().high = mx;
  for (const double v : values) {
    std::size_t idx = bins == 1 ? 0 : static_cast<std::size_t>(std::floor((v - mn) / width));
    idx = std::min(idx, bins - 1);
    ++rows[idx].count;
  }
  return rows;
}

std::string render_histogram(const std::vector<HistogramRow>& rows, YScale y_scale,
                             std::size_t width) {
  if (rows.empty()) return {};
  const auto scaled = [y_scale](std::uint64_t c) {
    return y_scale == YScale::Sqrt ? std::sqrt(static_cast<double>(c))
                                   : static_cast<double>(c);
  };

  std::vector<std::string> labels;
  labels.reserve(rows.size());
  std::size_t label_width = 0;
  double peak = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const bool last = i + 1 == rows.size();
    labels.push_back("[" + format_number(rows[i].low) + ", " + format_number(rows[i].high) +
                     (last ? "]" : ")"));
    label_width = std::max(label_width, labels.back().size());
    peak = std::max(peak, scaled(rows[i].count));
  }
  const double unit = peak > 0.0 ? static_cast<double>(width) / peak : 0.0;

  std::string out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out += labels[i];
    out.append(label_width - labels[i].size() + 2, ' ');
    const auto bar = static_cast<std::size_t>(std::llround(scaled(rows[i].count) * unit));
    out.append(bar, '#');
    if (bar != 0) out += ' ';
    out += std::to_string(rows[i].count);
    out += '\n';
  }
  return out;
}

void write_histogram_csv(const std::vector<HistogramRow>& rows, std::ostream& out) {
  out << kHistogramCsvHeader << '\n';
  for (const auto& row : rows)
    out << format_number(row.low) << ',' << format_number(row.high) << ',' << row.count
        << '\n';
}

}  // namespace epg
