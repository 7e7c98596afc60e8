#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "epg/errors.hpp"

namespace epg {

/// Per-node impact for one epoch, one row per node in insertion order, each
/// labeled with the macroblock the node decodes.
struct ImpactReport {
  struct Row {
    std::uint32_t frame_idx = 0;
    std::uint32_t mb_x = 0;
    std::uint32_t mb_y = 0;
    double impact = 0.0;

    friend bool operator==(const Row&, const Row&) = default;
  };

  std::uint32_t epoch_idx = 0;
  std::vector<Row> rows;

  friend bool operator==(const ImpactReport&, const ImpactReport&) = default;
};

/// One parsed CSV row; epoch index made explicit.
struct ReportRow {
  std::uint32_t epoch_idx = 0;
  std::uint32_t frame_idx = 0;
  std::uint32_t mb_x = 0;
  std::uint32_t mb_y = 0;
  double impact = 0.0;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

inline constexpr const char* kReportCsvHeader = "epoch,frame,mb_x,mb_y,impact";

/// Integral values print with no decimal point; everything else with the
/// shortest representation that round-trips.
std::string format_number(double value);

void write_report_csv(const std::vector<ImpactReport>& reports, std::ostream& out);

/// Throws CsvFormatError on malformed input. An empty stream reads as an
/// empty report.
std::vector<ReportRow> read_report_csv(std::istream& in);

}  // namespace epg
