#include "epg/report.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string_view>

namespace epg {

namespace {

// Largest double below which every integer is exactly representable.
constexpr double kIntegralLimit = 9007199254740992.0;

template <typename T>
T parse_field(std::string_view text, std::size_t line, const char* name) {
  T out{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  if (ec != std::errc{} || ptr != end || text.empty())
    throw CsvFormatError(line, std::string("invalid value for '") + name + "'");
  return out;
}

}  // namespace

std::string format_number(double value) {
  if (std::isfinite(value) && value == std::floor(value) && std::abs(value) < kIntegralLimit)
    return std::to_string(static_cast<long long>(value));
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

void write_report_csv(const std::vector<ImpactReport>& reports, std::ostream& out) {
  out << kReportCsvHeader << '\n';
  for (const auto& report : reports) {
    for (const auto& row : report.rows) {
      out << report.epoch_idx << ',' << row.frame_idx << ',' << row.mb_x << ',' << row.mb_y
          << ',' << format_number(row.impact) << '\n';
    }
  }
}

std::vector<ReportRow> read_report_csv(std::istream& in) {
  std::vector<ReportRow> rows;
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) return rows;
  ++lineno;
  if (line != kReportCsvHeader)
    throw CsvFormatError(lineno, std::string("expected header '") + kReportCsvHeader + "'");
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view rest = line;
    std::string_view field[5];
    for (int i = 0; i < 4; ++i) {
      const auto comma = rest.find(',');
      if (comma == std::string_view::npos)
        throw CsvFormatError(lineno, "expected 5 comma-separated fields");
      field[i] = rest.substr(0, comma);
      rest.remove_prefix(comma + 1);
    }
    if (rest.find(',') != std::string_view::npos)
      throw CsvFormatError(lineno, "expected 5 comma-separated fields");
    field[4] = rest;

    ReportRow row;
    row.epoch_idx = parse_field<std::uint32_t>(field[0], lineno, "epoch");
    row.frame_idx = parse_field<std::uint32_t>(field[1], lineno, "frame");
    row.mb_x = parse_field<std::uint32_t>(field[2], lineno, "mb_x");
    row.mb_y = parse_field<std::uint32_t>(field[3], lineno, "mb_y");
    row.impact = parse_field<double>(field[4], lineno, "impact");
    rows.push_back(row);
  }
  return rows;
}

}  // namespace epg
