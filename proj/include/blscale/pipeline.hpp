#pragma once

// Per-run analysis (nondimensionalize -> fit -> scales), batch aggregation
// with the Re_theta filter and delta gate, and report emission.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "blscale/runfile.hpp"
#include "blscale/scales.hpp"
#include "blscale/segfit.hpp"

namespace blscale {

/// Fitting or scale computation failed for a named run.
class AnalysisError : public Error {
 public:
  using Error::Error;
};

struct RunAnalysis {
  std::string name;
  std::optional<double> re_theta;
  DimensionlessProfile profile;
  TwoLayerFit fit;
  // Absent when the fit has no interface or the flow metadata is unknown.
  std::optional<ScaleReport> scales;
};

/// Throws AnalysisError (run name in the message) when fitting fails or the
/// fitted wall law is nonphysical.
RunAnalysis analyze_run(const ParsedRun& parsed, const FitConfig& config = {});
RunAnalysis analyze_run(const Run& run, const FitConfig& config = {});

struct BatchOptions {
  FitConfig config;
  double re_theta_min = 10000.0;
  double delta_max = 0.03;
};

struct BatchRow {
  std::string name;
  std::string source;  // file name within the batch directory
  std::optional<RunAnalysis> analysis;
  std::string error;   // parse or analysis diagnostic when analysis is absent
  bool parse_failed = false;
  bool included = false;
  std::vector<std::string> exclusion_reasons;
};

struct BatchSummary {
  double re_theta_min = 10000.0;
  double delta_max = 0.03;
  std::vector<BatchRow> rows;  // sorted by (name, source)
  std::size_t included = 0;
  std::size_t excluded = 0;
  std::optional<double> mean_lg_ratio;
  std::optional<double> std_lg_ratio;  // sample standard deviation, needs >= 2 rows
};

/// Decides inclusion for each row, sorts rows and reduces the aggregate.
BatchSummary summarize(std::vector<BatchRow> rows, double re_theta_min, double delta_max);

/// Analyzes every `*.run` file directly inside `dir`.
BatchSummary batch_analyze(const std::filesystem::path& dir, const BatchOptions& options = {});

enum class TableFormat { Tsv, Json };

std::string emit_table(const BatchSummary& summary, TableFormat format);

/// Columnar lg-lg plot data: retained and excluded points, both fitted laws
/// sampled as polylines, and the eta* marker.
std::string emit_plotdata(std::string_view name, const DimensionlessProfile& profile,
                          const TwoLayerFit& fit);
inline std::string emit_plotdata(const RunAnalysis& a) {
  return emit_plotdata(a.name, a.profile, a.fit);
}

/// Reads a whole file; throws Error when it cannot be opened.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace blscale
