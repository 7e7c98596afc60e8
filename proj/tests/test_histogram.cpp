#include "epg/histogram.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "epg/report.hpp"
#include "epg/rng.hpp"

namespace epg {
namespace {

std::size_t bar_length(const std::string& rendered, std::size_t row) {
  std::istringstream in(rendered);
  std::string line;
  for (std::size_t i = 0; i <= row; ++i) {
    if (!std::getline(in, line)) { ADD_FAILURE() << "row " << row << " missing"; return 0; }
  }
  return static_cast<std::size_t>(std::count(line.begin(), line.end(), '#'));
}

TEST(ComputeHistogram, UnitWidthBinsWithClosedLastBin) {
  const auto rows = compute_histogram({1.0, 1.0, 2.0}, {});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (HistogramRow{1.0, 2.0, 2}));
  EXPECT_EQ(rows[1], (HistogramRow{2.0, 2.0, 1}));
}

TEST(ComputeHistogram, EmptyValuesYieldNoRows) {
  EXPECT_TRUE(compute_histogram({}, {}).empty());
}

TEST(ComputeHistogram, AllEqualValuesCollapseToOneBin) {
  const auto rows = compute_histogram({3.0, 3.0, 3.0}, {});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0], (HistogramRow{3.0, 3.0, 3}));

  HistogramSpec by_count;
  by_count.bin_count = 8;
  const auto rows2 = compute_histogram({3.0, 3.0}, by_count);
  ASSERT_EQ(rows2.size(), 1u);
  EXPECT_EQ(rows2[0].count, 2u);
}

TEST(ComputeHistogram, BinCountModeSplitsTheRange) {
  HistogramSpec spec;
  spec.bin_count = 2;
  const auto rows = compute_histogram({1.0, 1.0, 2.0}, spec);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (HistogramRow{1.0, 1.5, 2}));
  EXPECT_EQ(rows[1], (HistogramRow{1.5, 2.0, 1}));
}

TEST(ComputeHistogram, WideBinsGroupValues) {
  HistogramSpec spec;
  spec.bin_width = 10.0;
  const auto rows = compute_histogram({0.0, 5.0, 10.0, 15.0, 21.0}, spec);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].count, 2u);
  EXPECT_EQ(rows[1].count, 2u);
  EXPECT_EQ(rows[2].count, 1u);
  EXPECT_EQ(rows[2].high, 21.0);
}

TEST(ComputeHistogram, EveryValueLandsInExactlyOneBin) {
  Rng rng(12);
  for (int round = 0; round < 20; ++round) {
    std::vector<double> values;
    const std::size_t n = 1 + rng.next_below(300);
    values.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      values.push_back(static_cast<double>(rng.next_below(1000)) / 8.0);
    HistogramSpec spec;
    if (round % 2 == 0)
      spec.bin_width = 0.5 + rng.next_unit() * 20.0;
    else
      spec.bin_count = 1 + rng.next_below(40);
    const auto rows = compute_histogram(values, spec);
    std::uint64_t total = 0;
    for (const auto& row : rows) total += row.count;
    ASSERT_EQ(total, values.size()) << "round " << round;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
      ASSERT_EQ(rows[i].high, rows[i + 1].low);
      ASSERT_LT(rows[i].low, rows[i].high);
    }
  }
}

TEST(ComputeHistogram, SpecIsValidated) {
  HistogramSpec both;
  both.bin_width = 1.0;
  both.bin_count = 4;
  EXPECT_THROW(compute_histogram({1.0}, both), InvalidParamsError);

  HistogramSpec bad_width;
  bad_width.bin_width = 0.0;
  EXPECT_THROW(compute_histogram({1.0}, bad_width), InvalidParamsError);
  bad_width.bin_width = -2.0;
  EXPECT_THROW(compute_histogram({1.0}, bad_width), InvalidParamsError);

  HistogramSpec bad_count;
  bad_count.bin_count = 0;
  EXPECT_THROW(compute_histogram({1.0}, bad_count), InvalidParamsError);

  EXPECT_THROW(compute_histogram({std::nan("")}, {}), InvalidParamsError);
}

TEST(RenderHistogram, SqrtScaleCompressesSpikes) {
  // Counts 1 and 100 at width 60: sqrt gives bars 6 and 60, a 10x ratio
  // instead of the linear 100x.
  const std::vector<HistogramRow> rows{{0.0, 1.0, 1}, {1.0, 1.0, 100}};
  const std::string sqrt_render = render_histogram(rows, YScale::Sqrt, 60);
  EXPECT_EQ(bar_length(sqrt_render, 0), 6u);
  EXPECT_EQ(bar_length(sqrt_render, 1), 60u);

  const std::string linear_render = render_histogram(rows, YScale::Linear, 60);
  EXPECT_EQ(bar_length(linear_render, 0), 1u);
  EXPECT_EQ(bar_length(linear_render, 1), 60u);
}

TEST(RenderHistogram, CountsAreAlwaysPrinted) {
  const std::vector<HistogramRow> rows{{1.0, 2.0, 3}, {2.0, 2.0, 0}};
  const std::string rendered = render_histogram(rows, YScale::Sqrt, 10);
  EXPECT_NE(rendered.find("3\n"), std::string::npos);
  EXPECT_NE(rendered.find("0\n"), std::string::npos);
  EXPECT_NE(rendered.find("[1, 2)"), std::string::npos);
  EXPECT_NE(rendered.find("[2, 2]"), std::string::npos);
}

TEST(RenderHistogram, EmptyRowsRenderNothing) {
  EXPECT_EQ(render_histogram({}, YScale::Sqrt, 60), "");
}

TEST(HistogramCsv, HeaderAndFormattedBounds) {
  const std::vector<HistogramRow> rows{{1.0, 2.5, 3}, {2.5, 4.0, 0}};
  std::ostringstream out;
  write_histogram_csv(rows, out);
  EXPECT_EQ(out.str(), "bin_low,bin_high,count\n1,2.5,3\n2.5,4,0\n");
}

TEST(FormatNumber, IntegralValuesDropTheDecimalPoint) {
  EXPECT_EQ(format_number(4.0), "4");
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(-17.0), "-17");
  EXPECT_EQ(format_number(2.5), "2.5");
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(1e18), "1e+18");
}

}  // namespace
}  // namespace epg
