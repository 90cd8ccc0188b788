// blscale: command-line front end.
//
//   blscale analyze <file> [--config <path>] [--plot-out <path>] [--format tsv|json]
//   blscale batch <dir> [--config <path>] [--re-theta-min N] [--delta-max X]
//                       [--format tsv|json] [--out <path>] [--plot-dir <dir>]
//   blscale synth <spec-file> --out <dir>
//
// Exit status: 0 success, 1 analysis error, 2 usage error.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>

#include "blscale/pipeline.hpp"
#include "blscale/runfile.hpp"
#include "blscale/synth.hpp"
#include "blscale/version.hpp"

namespace fs = std::filesystem;
using namespace blscale;

namespace {

constexpr int kExitAnalysis = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

FitConfig load_config(const std::string& path) {
  if (path.empty()) return {};
  try {
    return parse_config(read_file(path));
  } catch (const Error& e) {
    throw UsageError("config '" + path + "': " + e.what());
  }
}

TableFormat table_format(const std::string& name) {
  return name == "json" ? TableFormat::Json : TableFormat::Tsv;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
}

std::string plot_file_name(const BatchRow& row) {
  return fs::path(row.source).stem().string() + ".plot";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-layer scaling-law analysis of turbulent boundary-layer profiles"};
  app.set_version_flag("--version", std::string("blscale ") + kVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string format = "tsv";
  const auto formats = CLI::IsMember({"tsv", "json"});

  auto* analyze = app.add_subcommand("analyze", "Fit one run file and report its scales");
  std::string run_path;
  std::string plot_out;
  analyze->add_option("file", run_path, "Run file")->required();
  analyze->add_option("--config", config_path, "FitConfig key = value file");
  analyze->add_option("--plot-out", plot_out, "Write lg-lg plot data here");
  analyze->add_option("--format", format, "Report format")->check(formats);

  auto* batch = app.add_subcommand("batch", "Analyze every *.run file in a directory");
  std::string batch_dir;
  BatchOptions options;
  std::string out_path;
  std::string plot_dir;
  batch->add_option("dir", batch_dir, "Directory of run files")->required();
  batch->add_option("--config", config_path, "FitConfig key = value file");
  batch->add_option("--re-theta-min", options.re_theta_min, "Aggregate only runs with Re_theta >= N");
  batch->add_option("--delta-max", options.delta_max, "Aggregate only runs with delta <= X");
  batch->add_option("--format", format, "Table format")->check(formats);
  batch->add_option("--out", out_path, "Write the table here instead of stdout");
  batch->add_option("--plot-dir", plot_dir, "Write one plot-data file per analyzed run here");

  auto* synth = app.add_subcommand("synth", "Generate synthetic run files");
  std::string spec_path;
  std::string synth_out;
  synth->add_option("spec-file", spec_path, "Synth spec file")->required();
  synth->add_option("--out", synth_out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*analyze) {
      const FitConfig config = load_config(config_path);
      ParsedRun parsed;
      try {
        parsed = parse_run_file(read_file(run_path));
      } catch (const Error& e) {
        std::cerr << run_path << ": " << e.what() << '\n';
        return kExitAnalysis;
      }
      BatchRow row;
      row.name = run_name(parsed);
      row.source = fs::path(run_path).filename().string();
      row.analysis = analyze_run(parsed, config);
      if (!plot_out.empty()) write_file(plot_out, emit_plotdata(*row.analysis));
      std::vector<BatchRow> rows;
      rows.push_back(std::move(row));
      const BatchOptions defaults;
      std::cout << emit_table(summarize(std::move(rows), defaults.re_theta_min, defaults.delta_max),
                              table_format(format));
      return 0;
    }

    if (*batch) {
      options.config = load_config(config_path);
      if (!(options.delta_max >= 0)) throw UsageError("--delta-max must be non-negative");
      const BatchSummary summary = batch_analyze(batch_dir, options);
      for (const BatchRow& row : summary.rows)
        if (!row.error.empty()) std::cerr << row.source << ": " << row.error << '\n';
      if (!plot_dir.empty()) {
        fs::create_directories(plot_dir);
        for (const BatchRow& row : summary.rows)
          if (row.analysis)
            write_file(fs::path(plot_dir) / plot_file_name(row), emit_plotdata(*row.analysis));
      }
      emit(out_path, emit_table(summary, table_format(format)));
      return 0;
    }

    if (*synth) {
      SynthBatchSpec spec;
      try {
        spec = parse_synth_spec(read_file(spec_path));
      } catch (const Error& e) {
        throw UsageError("synth spec '" + spec_path + "': " + e.what());
      }
      fs::create_directories(synth_out);
      for (int i = 0; i < spec.count; ++i) {
        SynthSpec s = spec.spec;
        if (spec.count > 1) {
          char suffix[16];
          std::snprintf(suffix, sizeof suffix, "_%03d", i);
          s.name += suffix;
          s.seed += static_cast<std::uint64_t>(i);
        }
        const SynthRun run = gen_two_layer(s);
        write_file(fs::path(synth_out) / (s.name + ".run"), format_run_file(run.run));
      }
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitAnalysis;
  }
  return kExitUsage;
}
