#include "blscale/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace blscale {

RunAnalysis analyze_run(const ParsedRun& parsed, const FitConfig& config) {
  RunAnalysis a;
  a.name = run_name(parsed);
  a.re_theta = run_re_theta(parsed);
  try {
    a.profile = run_profile(parsed);
    a.fit = fit_two_layer(a.profile, config);
    const auto flow = run_flow(parsed);
    if (a.fit.eta_star && flow) a.scales = compute_scales(a.fit, *flow);
  } catch (const Error& e) {
    throw AnalysisError("run '" + a.name + "': " + e.what());
  }
  return a;
}

RunAnalysis analyze_run(const Run& run, const FitConfig& config) {
  return analyze_run(ParsedRun{run}, config);
}

BatchSummary summarize(std::vector<BatchRow> rows, double re_theta_min, double delta_max) {
  std::sort(rows.begin(), rows.end(), [](const BatchRow& a, const BatchRow& b) {
    return std::tie(a.name, a.source) < std::tie(b.name, b.source);
  });

  BatchSummary s;
  s.re_theta_min = re_theta_min;
  s.delta_max = delta_max;
  std::vector<double> ratios;
  for (BatchRow& row : rows) {
    auto& reasons = row.exclusion_reasons;
    reasons.clear();
    if (!row.analysis) {
      reasons.emplace_back(row.parse_failed ? "parse_error" : "analysis_error");
    } else {
      const RunAnalysis& a = *row.analysis;
      for (const auto& flag : a.fit.flags.names()) reasons.push_back("flag:" + flag);
      if (!a.scales) reasons.emplace_back(a.fit.eta_star ? "no_flow_metadata" : "no_interface");
      if (!a.re_theta)
        reasons.emplace_back("re_theta_missing");
      else if (!(*a.re_theta >= re_theta_min))
        reasons.emplace_back("re_theta_below_min");
      if (a.scales && !(a.scales->delta <= delta_max)) reasons.emplace_back("delta_above_max");
    }
    row.included = reasons.empty();
    if (row.included) {
      ++s.included;
      ratios.push_back(row.analysis->scales->lg_ratio);
    } else {
      ++s.excluded;
    }
  }
  if (!ratios.empty()) {
    const double n = static_cast<double>(ratios.size());
    const double mean = std::accumulate(ratios.begin(), ratios.end(), 0.0) / n;
    s.mean_lg_ratio = mean;
    if (ratios.size() >= 2) {
      double ss = 0;
      for (double r : ratios) ss += (r - mean) * (r - mean);
      s.std_lg_ratio = std::sqrt(ss / (n - 1));
    }
  }
  s.rows = std::move(rows);
  return s;
}

BatchSummary batch_analyze(const std::filesystem::path& dir, const BatchOptions& options) {
  validate_config(options.config);
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec))
    throw Error("batch: cannot read directory '" + dir.string() + "'");

  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".run") files.push_back(entry.path());
  }
  if (ec) throw Error("batch: cannot read directory '" + dir.string() + "': " + ec.message());

  std::vector<BatchRow> rows;
  std::size_t parsed_count = 0;
  for (const auto& path : files) {
    BatchRow row;
    row.source = path.filename().string();
    row.name = path.stem().string();
    try {
      const ParsedRun parsed = parse_run_file(read_file(path));
      ++parsed_count;
      row.name = run_name(parsed);
      row.analysis = analyze_run(parsed, options.config);
    } catch (const ParseError& e) {
      row.error = e.what();
      row.parse_failed = true;
    } catch (const AnalysisError& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  if (parsed_count == 0) throw Error("batch: no parseable run files in '" + dir.string() + "'");
  return summarize(std::move(rows), options.re_theta_min, options.delta_max);
}

// ---------------------------------------------------------------------------
// Reports

namespace {

std::string g6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const std::vector<std::string> kColumns = {
    "name",   "re_theta", "A",      "alpha",    "B",     "beta",   "eta_star", "ln_re1", "ln_re2",
    "delta",  "ln_re",    "lambda", "Lambda",   "lg_ratio", "flags", "included", "exclusion"};

// Numeric cells of a row in column order (name and the trailing text
// columns excluded); nullopt renders as NA / null.
std::vector<std::optional<double>> numeric_cells(const BatchRow& row) {
  std::vector<std::optional<double>> c(13);
  if (!row.analysis) return c;
  const RunAnalysis& a = *row.analysis;
  c[0] = a.re_theta;
  c[1] = a.fit.wall_law.prefactor;
  c[2] = a.fit.wall_law.exponent;
  c[3] = a.fit.outer_law.prefactor;
  c[4] = a.fit.outer_law.exponent;
  c[5] = a.fit.eta_star;
  if (a.scales) {
    const ScaleReport& s = *a.scales;
    c[6] = s.ln_re1;
    c[7] = s.ln_re2;
    c[8] = s.delta;
    c[9] = s.ln_re_eff;
    c[10] = s.lambda_wall;
    c[11] = s.lambda_cap;
    c[12] = s.lg_ratio;
  }
  return c;
}

std::string joined(const std::vector<std::string>& v, char sep) {
  std::string out;
  for (const auto& s : v) {
    if (!out.empty()) out += sep;
    out += s;
  }
  return out;
}

std::string flags_of(const BatchRow& row) {
  return row.analysis ? row.analysis->fit.flags.to_string() : std::string();
}

// Round to 6 significant digits so JSON matches the TSV rendering.
double round6(double v) { return std::strtod(g6(v).c_str(), nullptr); }

std::string emit_tsv(const BatchSummary& s) {
  std::ostringstream os;
  auto opt = [](const std::optional<double>& v) { return v ? g6(*v) : std::string("NA"); };
  os << "# re_theta_min\t" << g6(s.re_theta_min) << '\n';
  os << "# delta_max\t" << g6(s.delta_max) << '\n';
  os << "# included_runs\t" << s.included << '\n';
  os << "# excluded_runs\t" << s.excluded << '\n';
  os << "# mean_lg_ratio\t" << opt(s.mean_lg_ratio) << '\n';
  os << "# std_lg_ratio\t" << opt(s.std_lg_ratio) << '\n';
  os << joined(kColumns, '\t') << '\n';
  for (const BatchRow& row : s.rows) {
    os << row.name;
    for (const auto& cell : numeric_cells(row)) os << '\t' << opt(cell);
    const std::string flags = flags_of(row);
    const std::string reasons = joined(row.exclusion_reasons, ';');
    os << '\t' << (flags.empty() ? "-" : flags) << '\t' << (row.included ? "yes" : "no") << '\t'
       << (reasons.empty() ? "-" : reasons) << '\n';
  }
  return os.str();
}

std::string emit_json(const BatchSummary& s) {
  using ojson = nlohmann::ordered_json;
  auto opt = [](const std::optional<double>& v) { return v ? ojson(round6(*v)) : ojson(nullptr); };
  ojson doc;
  doc["re_theta_min"] = round6(s.re_theta_min);
  doc["delta_max"] = round6(s.delta_max);
  doc["included_runs"] = s.included;
  doc["excluded_runs"] = s.excluded;
  doc["mean_lg_ratio"] = opt(s.mean_lg_ratio);
  doc["std_lg_ratio"] = opt(s.std_lg_ratio);
  doc["columns"] = kColumns;
  ojson rows = ojson::array();
  for (const BatchRow& row : s.rows) {
    ojson r;
    r["name"] = row.name;
    const auto cells = numeric_cells(row);
    for (std::size_t i = 0; i < cells.size(); ++i) r[kColumns[i + 1]] = opt(cells[i]);
    r["flags"] = row.analysis ? row.analysis->fit.flags.names() : std::vector<std::string>{};
    r["included"] = row.included;
    r["exclusion"] = row.exclusion_reasons;
    if (!row.error.empty()) r["error"] = row.error;
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

void write_polyline(std::ostream& os, const char* series, const PowerLawd& law, double lo, double hi) {
  constexpr int kSamples = 32;
  const double lg_lo = std::log10(lo);
  const double lg_hi = std::log10(hi);
  for (int i = 0; i < kSamples; ++i) {
    const double lg_eta = lg_lo + (lg_hi - lg_lo) * i / (kSamples - 1);
    const double lg_phi = std::log10(law.prefactor) + law.exponent * lg_eta;
    os << series << ' ' << g17(lg_eta) << ' ' << g17(lg_phi) << '\n';
  }
}

}  // namespace

std::string emit_table(const BatchSummary& summary, TableFormat format) {
  return format == TableFormat::Json ? emit_json(summary) : emit_tsv(summary);
}

std::string emit_plotdata(std::string_view name, const DimensionlessProfile& profile,
                          const TwoLayerFit& fit) {
  std::ostringstream os;
  const Eigen::Index n = fit.eta.size();
  const Eigen::Index k = fit.break_index;
  const std::string flags = fit.flags.to_string();
  os << "# lg-lg broken-line plot data\n";
  os << "# run: " << name << '\n';
  os << "# flags: " << (flags.empty() ? "none" : flags) << '\n';
  os << "# eta_star: " << (fit.eta_star ? g17(*fit.eta_star) : std::string("none")) << '\n';
  os << "# wall_law: A=" << g17(fit.wall_law.prefactor) << " alpha=" << g17(fit.wall_law.exponent)
     << '\n';
  os << "# outer_law: B=" << g17(fit.outer_law.prefactor) << " beta=" << g17(fit.outer_law.exponent)
     << '\n';
  os << "# series data: retained points, lg eta lg phi\n";
  os << "# series excluded: filtered points, lg eta lg phi\n";
  os << "# series wall_law: fitted wall law polyline\n";
  os << "# series outer_law: fitted outer law polyline\n";
  os << "# series eta_star: interface marker, lg eta* lg phi(eta*)\n";
  os << "# columns: series lg_eta lg_phi\n";

  for (Eigen::Index i = 0; i < n; ++i)
    os << "data " << g17(std::log10(fit.eta[i])) << ' ' << g17(std::log10(fit.phi[i])) << '\n';
  // Profile points missing from the retained set were filtered out.
  for (Eigen::Index i = 0, j = 0; i < profile.size(); ++i) {
    if (j < n && profile.eta()[i] == fit.eta[j]) {
      ++j;
      continue;
    }
    os << "excluded " << g17(std::log10(profile.eta()[i])) << ' '
       << g17(std::log10(profile.phi()[i])) << '\n';
  }

  // Each polyline spans its segment, extended to eta* when eta* lies in the data.
  double wall_hi = fit.eta[k];
  double outer_lo = fit.eta[k + 1];
  if (fit.eta_star && !fit.flags.has(FitFlag::EtaStarOutOfRange)) {
    wall_hi = std::max(wall_hi, *fit.eta_star);
    outer_lo = std::min(outer_lo, *fit.eta_star);
  }
  write_polyline(os, "wall_law", fit.wall_law, fit.eta[0], wall_hi);
  write_polyline(os, "outer_law", fit.outer_law, outer_lo, fit.eta[n - 1]);
  if (fit.eta_star) {
    os << "eta_star " << g17(std::log10(*fit.eta_star)) << ' '
       << g17(std::log10(eval_law(fit.wall_law, *fit.eta_star))) << '\n';
  }
  return os.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << contents;
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

}  // namespace blscale
