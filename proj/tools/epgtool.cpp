#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "epg/analysis.hpp"
#include "epg/errors.hpp"
#include "epg/fault.hpp"
#include "epg/histogram.hpp"
#include "epg/report.hpp"
#include "epg/rng.hpp"
#include "epg/trace.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitBound = 4;

struct GenerateCmd {
  epg::trace::GenParams params;
  std::vector<double> mix;
  std::string output;
};

struct AnalyzeCmd {
  std::string input;
  std::string output;
  epg::ImpactBackend backend = epg::ImpactBackend::Exact;
  std::size_t chunk_nodes = epg::kDefaultChunkNodes;
};

struct HistogramCmd {
  std::string input;
  std::string output;
  double bin_width = 0.0;
  std::size_t bin_count = 0;
  bool width_set = false;
  bool count_set = false;
  epg::YScale y_scale = epg::YScale::Sqrt;
  std::size_t bar_width = 60;
};

struct ValidateCmd {
  std::string input;
  std::string mode = "worst";
  double p = 0.5;
  std::size_t samples = 10;
  std::uint64_t seed = 42;
  unsigned threads = 0;
};

int run_generate(const GenerateCmd& cmd) {
  epg::trace::GenParams params = cmd.params;
  if (!cmd.mix.empty()) params.partition_mix = cmd.mix;
  const auto records = epg::trace::generate_trace(params);
  epg::trace::write_trace_file(records, cmd.output);
  const std::uint64_t epochs = (params.frames + params.gop_length - 1) / params.gop_length;
  const std::uint64_t nodes =
      static_cast<std::uint64_t>(params.frames) * params.width_mb * params.height_mb;
  std::cout << "frames=" << params.frames << " epochs=" << epochs << " nodes=" << nodes
            << '\n';
  return kExitOk;
}

int run_analyze(const AnalyzeCmd& cmd) {
  const auto records = epg::trace::parse_trace_file(cmd.input);
  const auto epochs = epg::h264::build_epgs(records, cmd.backend, cmd.chunk_nodes);
  std::vector<epg::ImpactReport> reports;
  reports.reserve(epochs.size());
  std::size_t rows = 0;
  for (const auto& e : epochs) {
    rows += e.report.rows.size();
    reports.push_back(e.report);
  }
  std::ofstream out(cmd.output, std::ios::binary);
  if (!out) throw epg::IoError("cannot open output file '" + cmd.output + "'");
  epg::write_report_csv(reports, out);
  out.flush();
  if (!out) throw epg::IoError("failed writing '" + cmd.output + "'");
  std::cout << "epochs=" << epochs.size() << " rows=" << rows << '\n';
  return kExitOk;
}

int run_histogram(const HistogramCmd& cmd) {
  std::ifstream in(cmd.input, std::ios::binary);
  if (!in) throw epg::IoError("cannot open report file '" + cmd.input + "'");
  const auto report_rows = epg::read_report_csv(in);
  std::vector<double> values;
  values.reserve(report_rows.size());
  for (const auto& row : report_rows) values.push_back(row.impact);

  epg::HistogramSpec spec;
  if (cmd.width_set) spec.bin_width = cmd.bin_width;
  if (cmd.count_set) spec.bin_count = cmd.bin_count;
  spec.y_scale = cmd.y_scale;

  const auto rows = epg::compute_histogram(values, spec);
  std::cout << epg::render_histogram(rows, spec.y_scale, cmd.bar_width);
  if (!cmd.output.empty()) {
    std::ofstream out(cmd.output, std::ios::binary);
    if (!out) throw epg::IoError("cannot open output file '" + cmd.output + "'");
    epg::write_histogram_csv(rows, out);
    out.flush();
    if (!out) throw epg::IoError("failed writing '" + cmd.output + "'");
  }
  return kExitOk;
}

int run_validate(const ValidateCmd& cmd) {
  const auto records = epg::trace::parse_trace_file(cmd.input);
  const auto epochs = epg::h264::build_epgs(records, epg::ImpactBackend::Exact);
  std::uint64_t bad = 0;
  if (cmd.mode == "worst") {
    for (const auto& e : epochs) {
      const auto result = epg::sweep(e.graph, cmd.threads);
      bad += result.mismatches.size();
      std::cout << "epoch " << e.report.epoch_idx << ": nodes=" << e.graph.node_count()
                << " mismatches=" << result.mismatches.size() << '\n';
    }
  } else {
    epg::Rng picker(cmd.seed);
    for (const auto& e : epochs) {
      epg::ImpactVector estimated;
      estimated.reserve(e.report.rows.size());
      for (const auto& row : e.report.rows) estimated.push_back(row.impact);
      std::uint64_t violations = 0;
      const auto n = e.graph.node_count();
      for (std::size_t s = 0; s < cmd.samples && n > 0; ++s) {
        const auto v = static_cast<epg::NodeId>(picker.next_below(n));
        const auto outcome = epg::inject_prob(e.graph, v, cmd.p, picker.next_u64(), estimated);
        if (outcome.impact_observed > outcome.impact_estimated) ++violations;
      }
      bad += violations;
      std::cout << "epoch " << e.report.epoch_idx << ": nodes=" << n
                << " samples=" << cmd.samples << " violations=" << violations << '\n';
    }
  }
  return bad == 0 ? kExitOk : kExitBound;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Error-propagation graphs and worst-case impact bounds for macroblock traces"};
  app.require_subcommand(1);

  const std::map<std::string, epg::ImpactBackend> backends{
      {"oracle", epg::ImpactBackend::Oracle},
      {"exact", epg::ImpactBackend::Exact},
      {"fast", epg::ImpactBackend::FastBound}};
  const std::map<std::string, epg::YScale> scales{{"linear", epg::YScale::Linear},
                                                  {"sqrt", epg::YScale::Sqrt}};

  GenerateCmd gen;
  auto* generate = app.add_subcommand("generate", "Write a synthetic macroblock trace");
  generate->add_option("-o,--output", gen.output, "trace file to write")->required();
  generate->add_option("--seed", gen.params.seed, "generator seed")->capture_default_str();
  generate->add_option("--frames", gen.params.frames, "frame count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  generate->add_option("--width-mb", gen.params.width_mb, "frame width in macroblocks")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  generate->add_option("--height-mb", gen.params.height_mb, "frame height in macroblocks")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  generate->add_option("--gop", gen.params.gop_length, "frames per group of pictures")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  generate
      ->add_option("--p-intra", gen.params.p_intra_in_p_frame,
                   "intra probability inside non-IDR frames")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  generate
      ->add_option("--mv-range", gen.params.mv_range_qpel,
                   "motion vector range in quarter-pel units")
      ->capture_default_str();
  generate->add_option("--mix", gen.mix,
                       "five partition layout weights: 16x16,16x8,8x16,8x8,sub8x8")
      ->delimiter(',');

  AnalyzeCmd ana;
  auto* analyze = app.add_subcommand("analyze", "Compute per-macroblock impact bounds");
  analyze->add_option("trace", ana.input, "trace file to read")->required();
  analyze->add_option("-o,--output", ana.output, "impact report CSV to write")->required();
  analyze->add_option("--backend", ana.backend, "impact backend")
      ->transform(CLI::CheckedTransformer(backends, CLI::ignore_case))
      ->capture_default_str();
  analyze->add_option("--chunk-nodes", ana.chunk_nodes, "bitset chunk size of the exact backend")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  HistogramCmd histo;
  auto* histogram = app.add_subcommand("histogram", "Bin an impact report and draw it");
  histogram->add_option("report", histo.input, "impact report CSV to read")->required();
  histogram->add_option("-o,--output", histo.output, "histogram CSV to write");
  auto* width_opt =
      histogram->add_option("--bin-width", histo.bin_width, "bin width in impact units");
  auto* count_opt = histogram->add_option("--bins", histo.bin_count, "number of bins");
  width_opt->excludes(count_opt);
  histogram->add_option("--y-scale", histo.y_scale, "bar scaling")
      ->transform(CLI::CheckedTransformer(scales, CLI::ignore_case))
      ->default_str("sqrt");
  histogram->add_option("--bar-width", histo.bar_width, "bar width of the tallest bin")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  ValidateCmd val;
  auto* validate = app.add_subcommand("validate", "Fault-inject a trace against its bounds");
  validate->add_option("trace", val.input, "trace file to read")->required();
  validate->add_option("--mode", val.mode, "worst: exhaustive sweep; prob: sampled injections")
      ->check(CLI::IsMember({"worst", "prob"}))
      ->capture_default_str();
  validate->add_option("--p", val.p, "per-edge propagation probability in prob mode")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  validate->add_option("--samples", val.samples, "injections per epoch in prob mode")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  validate->add_option("--seed", val.seed, "sampling seed in prob mode")->capture_default_str();
  validate->add_option("--threads", val.threads, "sweep threads, 0 = hardware");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (generate->parsed()) return run_generate(gen);
    if (analyze->parsed()) return run_analyze(ana);
    if (histogram->parsed()) {
      histo.width_set = width_opt->count() > 0;
      histo.count_set = count_opt->count() > 0;
      return run_histogram(histo);
    }
    if (validate->parsed()) return run_validate(val);
  } catch (const epg::InvalidParamsError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const epg::InvalidProbabilityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const epg::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return kExitUsage;
}
