#pragma once

// Text formats owned by the tool.
//
// Run file (UTF-8):
//
//   # comments start with '#', anywhere on a line
//   name    = run_12000
//   u_star  = 0.5          # m/s
//   U_inf   = 14.2857      # m/s
//   nu      = 1.5e-5       # m^2/s
//   re_theta = 12000       # optional, also: theta, tau, rho
//   units   = dimensional  # or wall_units (columns are eta phi)
//
//   0.0010  3.2
//   0.0020  3.9
//
// The header ends at the first blank line; the body holds exactly two
// whitespace-separated numeric columns per row. Numbers are parsed strictly:
// the whole token must be a finite decimal value.
//
// Config and synth-spec files use the same `key = value` header syntax.

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "blscale/core.hpp"
#include "blscale/errors.hpp"
#include "blscale/scales.hpp"
#include "blscale/segfit.hpp"
#include "blscale/synth.hpp"

namespace blscale {

enum class DiagCode {
  Encoding,         // not valid UTF-8, or contains NUL
  MalformedHeader,  // header line without `key = value` shape, or bad enum value
  UnknownKey,
  DuplicateKey,
  MissingKey,
  MalformedNumber,
  ColumnCount,
  NoData,
  NonMonotone,
  InvalidRun,  // values parse but violate the Run invariants
};

inline constexpr DiagCode kAllDiagCodes[] = {
    DiagCode::Encoding,        DiagCode::MalformedHeader, DiagCode::UnknownKey,
    DiagCode::DuplicateKey,    DiagCode::MissingKey,      DiagCode::MalformedNumber,
    DiagCode::ColumnCount,     DiagCode::NoData,          DiagCode::NonMonotone,
    DiagCode::InvalidRun};

const char* diag_code_name(DiagCode code);

struct Diagnostic {
  DiagCode code;
  int line = 0;    // 1-based; 0 when not tied to a line
  int column = 0;  // 1-based byte column; 0 when not tied to a column
  std::string message;

  std::string to_string() const;
};

class ParseError : public Error {
 public:
  explicit ParseError(Diagnostic diag);
  const Diagnostic& diagnostic() const { return diag_; }

 private:
  Diagnostic diag_;
};

/// A run given directly in wall units. Flow metadata is optional; without
/// u_star, U_inf and nu the fit still runs but no length scales are produced.
struct WallUnitsRun {
  std::string name;
  DimensionlessProfile profile;
  std::optional<double> u_star;
  std::optional<double> U_inf;
  std::optional<double> nu;
  std::optional<double> re_theta;
};

using ParsedRun = std::variant<Run, WallUnitsRun>;

/// Parses a run file. Never throws anything but ParseError.
ParsedRun parse_run_file(std::string_view text);

const std::string& run_name(const ParsedRun& parsed);
std::optional<double> run_re_theta(const ParsedRun& parsed);
DimensionlessProfile run_profile(const ParsedRun& parsed);
std::optional<FlowMetadata> run_flow(const ParsedRun& parsed);

/// Serializes a dimensional run; parse_run_file reads it back exactly.
std::string format_run_file(const Run& run);

/// Parses `key = value` config text into a FitConfig (keys mirror its fields).
FitConfig parse_config(std::string_view text);

/// A synth spec file holds SynthSpec fields plus `count` (default 1). With
/// count > 1 the runs are named <name>_000, <name>_001, ... with seed + i.
struct SynthBatchSpec {
  SynthSpec spec;
  int count = 1;
};

SynthBatchSpec parse_synth_spec(std::string_view text);

}  // namespace blscale
