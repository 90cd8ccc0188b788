#include "blscale/runfile.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace blscale {

namespace {

struct Line {
  std::string_view text;  // comment and CR stripped
  bool blank = false;     // raw line was whitespace only
  int number = 0;
};

struct Entry {
  std::string value;
  int line = 0;
  int column = 0;  // column of the value
};

using Header = std::map<std::string, Entry, std::less<>>;

[[noreturn]] void fail(DiagCode code, int line, int column, std::string message) {
  throw ParseError(Diagnostic{code, line, column, std::move(message)});
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

void check_utf8(std::string_view text) {
  int line = 1;
  int col = 1;
  const auto* p = reinterpret_cast<const unsigned char*>(text.data());
  const std::size_t n = text.size();
  for (std::size_t i = 0; i < n;) {
    const unsigned char c = p[i];
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if (c == 0) fail(DiagCode::Encoding, line, col, "NUL byte in input");
    if (c < 0x80) {
      len = 1;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      fail(DiagCode::Encoding, line, col, "invalid UTF-8 lead byte");
    }
    if (i + len > n) fail(DiagCode::Encoding, line, col, "truncated UTF-8 sequence");
    for (std::size_t k = 1; k < len; ++k) {
      if ((p[i + k] & 0xC0) != 0x80) fail(DiagCode::Encoding, line, col, "invalid UTF-8 sequence");
      cp = (cp << 6) | (p[i + k] & 0x3F);
    }
    const bool overlong = (len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
                          (len == 4 && cp < 0x10000);
    if (overlong || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
      fail(DiagCode::Encoding, line, col, "invalid UTF-8 code point");
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    i += len;
  }
}

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  int number = 1;
  while (true) {
    const auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    Line line;
    line.number = number++;
    line.blank = trim(raw).empty();
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    line.text = raw;
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

int column_of(const Line& line, std::string_view token) {
  return static_cast<int>(token.data() - line.text.data()) + 1;
}

// Reads `key = value` lines up to the first blank line after some content.
// Returns the index of the first line after the header.
std::size_t read_header(const std::vector<Line>& lines, const std::set<std::string, std::less<>>& allowed,
                        Header& header) {
  std::size_t i = 0;
  bool seen = false;
  for (; i < lines.size(); ++i) {
    const Line& line = lines[i];
    if (line.blank) {
      if (seen) return i + 1;
      continue;
    }
    seen = true;
    const std::string_view content = trim(line.text);
    if (content.empty()) continue;  // comment-only line
    const auto eq = content.find('=');
    if (eq == std::string_view::npos)
      fail(DiagCode::MalformedHeader, line.number, column_of(line, content),
           "expected 'key = value'");
    const std::string_view key = trim(content.substr(0, eq));
    const std::string_view value = trim(content.substr(eq + 1));
    if (key.empty() || value.empty())
      fail(DiagCode::MalformedHeader, line.number, column_of(line, content),
           "empty key or value in header");
    if (!allowed.contains(key))
      fail(DiagCode::UnknownKey, line.number, column_of(line, key),
           "unknown key '" + std::string(key) + "'");
    if (header.contains(key))
      fail(DiagCode::DuplicateKey, line.number, column_of(line, key),
           "duplicate key '" + std::string(key) + "'");
    header.emplace(std::string(key), Entry{std::string(value), line.number, column_of(line, value)});
  }
  return i;
}

double parse_number(std::string_view token, int line, int column) {
  double value = 0;
  const char* first = token.data();
  const char* last = first + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value))
    fail(DiagCode::MalformedNumber, line, column,
         "malformed number '" + std::string(token) + "'");
  return value;
}

double number_of(const Entry& e) { return parse_number(e.value, e.line, e.column); }

std::optional<double> optional_number(const Header& h, std::string_view key) {
  const auto it = h.find(key);
  if (it == h.end()) return std::nullopt;
  return number_of(it->second);
}

void require_positive(const Header& h, std::string_view key, std::optional<double> v) {
  if (v && !(*v > 0)) {
    const Entry& e = h.find(key)->second;
    fail(DiagCode::InvalidRun, e.line, e.column, std::string(key) + " must be positive");
  }
}

std::string format_g(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

struct Rows {
  std::vector<double> a;
  std::vector<double> b;
  std::vector<int> line;
  std::vector<int> column;
};

Rows read_body(const std::vector<Line>& lines, std::size_t start) {
  Rows rows;
  for (std::size_t i = start; i < lines.size(); ++i) {
    const Line& line = lines[i];
    std::vector<std::string_view> tokens;
    std::string_view rest = line.text;
    while (true) {
      while (!rest.empty() && is_space(rest.front())) rest.remove_prefix(1);
      if (rest.empty()) break;
      std::size_t len = 0;
      while (len < rest.size() && !is_space(rest[len])) ++len;
      tokens.push_back(rest.substr(0, len));
      rest.remove_prefix(len);
    }
    if (tokens.empty()) continue;
    if (tokens.size() != 2) {
      std::ostringstream os;
      os << "expected 2 columns, found " << tokens.size();
      fail(DiagCode::ColumnCount, line.number, column_of(line, tokens.front()), os.str());
    }
    rows.a.push_back(parse_number(tokens[0], line.number, column_of(line, tokens[0])));
    rows.b.push_back(parse_number(tokens[1], line.number, column_of(line, tokens[1])));
    rows.line.push_back(line.number);
    rows.column.push_back(column_of(line, tokens[0]));
  }
  return rows;
}

void check_rows(const Rows& rows, const char* first_name, const char* second_name) {
  if (rows.a.empty()) fail(DiagCode::NoData, 0, 0, "no data rows");
  for (std::size_t i = 0; i < rows.a.size(); ++i) {
    if (!(rows.a[i] > 0) || !(rows.b[i] > 0))
      fail(DiagCode::InvalidRun, rows.line[i], rows.column[i],
           std::string(first_name) + " and " + second_name + " must be positive");
    if (i > 0 && !(rows.a[i] > rows.a[i - 1]))
      fail(DiagCode::NonMonotone, rows.line[i], rows.column[i],
           std::string(first_name) + " not strictly increasing");
  }
}

Eigen::ArrayXd to_array(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::ArrayXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

const std::set<std::string, std::less<>> kRunKeys = {
    "name", "u_star", "U_inf", "nu", "re_theta", "theta", "tau", "rho", "units"};

}  // namespace

const char* diag_code_name(DiagCode code) {
  switch (code) {
    case DiagCode::Encoding: return "E_ENCODING";
    case DiagCode::MalformedHeader: return "E_MALFORMED_HEADER";
    case DiagCode::UnknownKey: return "E_UNKNOWN_KEY";
    case DiagCode::DuplicateKey: return "E_DUPLICATE_KEY";
    case DiagCode::MissingKey: return "E_MISSING_KEY";
    case DiagCode::MalformedNumber: return "E_MALFORMED_NUMBER";
    case DiagCode::ColumnCount: return "E_COLUMN_COUNT";
    case DiagCode::NoData: return "E_NO_DATA";
    case DiagCode::NonMonotone: return "E_NON_MONOTONE";
    case DiagCode::InvalidRun: return "E_INVALID_RUN";
  }
  return "E_UNKNOWN";
}

std::string Diagnostic::to_string() const {
  std::ostringstream os;
  os << diag_code_name(code);
  if (line > 0) {
    os << " at line " << line;
    if (column > 0) os << ", column " << column;
  }
  os << ": " << message;
  return os.str();
}

ParseError::ParseError(Diagnostic diag) : Error(diag.to_string()), diag_(std::move(diag)) {}

ParsedRun parse_run_file(std::string_view text) {
  check_utf8(text);
  const auto lines = split_lines(text);
  Header h;
  const std::size_t body = read_header(lines, kRunKeys, h);

  bool wall_units = false;
  if (const auto it = h.find("units"); it != h.end()) {
    if (it->second.value == "wall_units") {
      wall_units = true;
    } else if (it->second.value != "dimensional") {
      fail(DiagCode::MalformedHeader, it->second.line, it->second.column,
           "units must be 'dimensional' or 'wall_units'");
    }
  }
  if (!h.contains("name")) fail(DiagCode::MissingKey, 0, 0, "missing key 'name'");
  if (!wall_units) {
    for (const char* key : {"u_star", "U_inf", "nu"})
      if (!h.contains(key)) fail(DiagCode::MissingKey, 0, 0, std::string("missing key '") + key + "'");
  }

  const auto u_star = optional_number(h, "u_star");
  const auto U_inf = optional_number(h, "U_inf");
  const auto nu = optional_number(h, "nu");
  const auto re_theta = optional_number(h, "re_theta");
  const auto theta = optional_number(h, "theta");
  const auto tau = optional_number(h, "tau");
  const auto rho = optional_number(h, "rho");
  for (const auto& [key, v] : {std::pair{"u_star", u_star}, {"U_inf", U_inf}, {"nu", nu},
                               {"re_theta", re_theta}, {"theta", theta}, {"tau", tau}, {"rho", rho}})
    require_positive(h, key, v);

  if (tau && rho && u_star) {
    if (std::abs(*u_star - std::sqrt(*tau / *rho)) / *u_star > 1e-6) {
      const Entry& e = h.find("u_star")->second;
      fail(DiagCode::InvalidRun, e.line, e.column, "u_star inconsistent with sqrt(tau/rho)");
    }
  }
  if (theta && re_theta && U_inf && nu) {
    if (std::abs(*re_theta - *U_inf * *theta / *nu) / *re_theta > 1e-6) {
      const Entry& e = h.find("re_theta")->second;
      fail(DiagCode::InvalidRun, e.line, e.column, "re_theta inconsistent with U_inf*theta/nu");
    }
  }

  const Rows rows = read_body(lines, body);
  const std::string name = h.find("name")->second.value;

  if (wall_units) {
    check_rows(rows, "eta", "phi");
    WallUnitsRun out;
    out.name = name;
    std::optional<double> phi_inf;
    if (u_star && U_inf) phi_inf = *U_inf / *u_star;
    out.profile = DimensionlessProfile(to_array(rows.a), to_array(rows.b), phi_inf);
    out.u_star = u_star;
    out.U_inf = U_inf;
    out.nu = nu;
    out.re_theta = re_theta;
    return out;
  }

  check_rows(rows, "y", "u");
  Run run;
  run.name = name;
  run.y = to_array(rows.a);
  run.u = to_array(rows.b);
  run.u_star = *u_star;
  run.U_inf = *U_inf;
  run.nu = *nu;
  run.re_theta = re_theta;
  run.theta = theta;
  run.tau = tau;
  run.rho = rho;
  try {
    validate_run(run);
  } catch (const InvalidRunError& e) {
    fail(DiagCode::InvalidRun, 0, 0, e.what());
  }
  return run;
}

const std::string& run_name(const ParsedRun& parsed) {
  return std::visit([](const auto& r) -> const std::string& { return r.name; }, parsed);
}

std::optional<double> run_re_theta(const ParsedRun& parsed) {
  return std::visit([](const auto& r) { return r.re_theta; }, parsed);
}

DimensionlessProfile run_profile(const ParsedRun& parsed) {
  if (const auto* run = std::get_if<Run>(&parsed)) return nondimensionalize(*run);
  return std::get<WallUnitsRun>(parsed).profile;
}

std::optional<FlowMetadata> run_flow(const ParsedRun& parsed) {
  if (const auto* run = std::get_if<Run>(&parsed)) return metadata_of(*run);
  const auto& w = std::get<WallUnitsRun>(parsed);
  if (w.u_star && w.U_inf && w.nu) return FlowMetadata{*w.u_star, *w.U_inf, *w.nu};
  return std::nullopt;
}

std::string format_run_file(const Run& run) {
  std::ostringstream os;
  os << "name = " << run.name << '\n';
  os << "units = dimensional\n";
  os << "u_star = " << format_g(run.u_star, 17) << '\n';
  os << "U_inf = " << format_g(run.U_inf, 17) << '\n';
  os << "nu = " << format_g(run.nu, 17) << '\n';
  if (run.re_theta) os << "re_theta = " << format_g(*run.re_theta, 17) << '\n';
  if (run.theta) os << "theta = " << format_g(*run.theta, 17) << '\n';
  if (run.tau) os << "tau = " << format_g(*run.tau, 17) << '\n';
  if (run.rho) os << "rho = " << format_g(*run.rho, 17) << '\n';
  os << "\n# y [m]  u [m/s]\n";
  for (Eigen::Index i = 0; i < run.y.size(); ++i)
    os << format_g(run.y[i], 17) << ' ' << format_g(run.u[i], 17) << '\n';
  return os.str();
}

FitConfig parse_config(std::string_view text) {
  check_utf8(text);
  const auto lines = split_lines(text);
  Header h;
  const std::size_t end =
      read_header(lines, {"eta_min", "frac_u_max", "min_seg_points", "exponent_tol"}, h);
  for (std::size_t i = end; i < lines.size(); ++i)
    if (!trim(lines[i].text).empty())
      fail(DiagCode::MalformedHeader, lines[i].number, 1, "unexpected content after blank line");

  FitConfig cfg;
  if (auto v = optional_number(h, "eta_min")) cfg.eta_min = *v;
  if (auto v = optional_number(h, "frac_u_max")) cfg.frac_u_max = *v;
  if (auto v = optional_number(h, "exponent_tol")) cfg.exponent_tol = *v;
  if (auto v = optional_number(h, "min_seg_points")) {
    if (*v != std::floor(*v) || *v < 0 || *v > 1e6) {
      const Entry& e = h.find("min_seg_points")->second;
      fail(DiagCode::MalformedNumber, e.line, e.column, "min_seg_points must be an integer");
    }
    cfg.min_seg_points = static_cast<int>(*v);
  }
  validate_config(cfg);
  return cfg;
}

SynthBatchSpec parse_synth_spec(std::string_view text) {
  check_utf8(text);
  const auto lines = split_lines(text);
  Header h;
  const std::size_t end = read_header(
      lines,
      {"name", "ln_re", "eta_star", "beta", "eta_lo", "eta_hi", "n_points", "noise_sigma", "seed",
       "u_star_over_U", "nu", "u_star", "re_theta", "count"},
      h);
  for (std::size_t i = end; i < lines.size(); ++i)
    if (!trim(lines[i].text).empty())
      fail(DiagCode::MalformedHeader, lines[i].number, 1, "unexpected content after blank line");

  auto integer = [&](std::string_view key, double lo, double hi) -> std::optional<double> {
    auto v = optional_number(h, key);
    if (v && (*v != std::floor(*v) || *v < lo || *v > hi)) {
      const Entry& e = h.find(key)->second;
      fail(DiagCode::MalformedNumber, e.line, e.column, std::string(key) + " must be an integer");
    }
    return v;
  };

  SynthBatchSpec out;
  SynthSpec& s = out.spec;
  if (auto it = h.find("name"); it != h.end()) s.name = it->second.value;
  if (auto v = optional_number(h, "ln_re")) s.ln_re = *v;
  if (auto v = optional_number(h, "eta_star")) s.eta_star = *v;
  if (auto v = optional_number(h, "beta")) s.beta = *v;
  if (auto v = optional_number(h, "eta_lo")) s.eta_lo = *v;
  if (auto v = optional_number(h, "eta_hi")) s.eta_hi = *v;
  if (auto v = integer("n_points", 0, 1e7)) s.n_points = static_cast<int>(*v);
  if (auto v = optional_number(h, "noise_sigma")) s.noise_sigma = *v;
  if (auto v = integer("seed", 0, 9007199254740992.0)) s.seed = static_cast<std::uint64_t>(*v);
  if (auto v = optional_number(h, "u_star_over_U")) s.u_star_over_U = *v;
  if (auto v = optional_number(h, "nu")) s.nu = *v;
  if (auto v = optional_number(h, "u_star")) s.u_star = *v;
  if (auto v = optional_number(h, "re_theta")) s.re_theta = *v;
  if (auto v = integer("count", 1, 100000)) out.count = static_cast<int>(*v);
  validate_spec(s);
  return out;
}

}  // namespace blscale
