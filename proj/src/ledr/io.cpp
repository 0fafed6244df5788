// SPDX-License-Identifier: Apache-2.0
#include "ledr/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

#include "ledr/error.hpp"

namespace ledr {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text, const std::string& field, std::size_t line, std::size_t column) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (text.empty() || res.ec != std::errc() || res.ptr != last) {
    std::ostringstream os;
    os << "line " << line << ", column " << column << " (" << field << "): '" << text << "' is not a number";
    throw ValidationError(ErrorKind::schema, field, line, column, os.str());
  }
  return v;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw Error(ErrorKind::io, "cannot create directory '" + path.parent_path().string() + "'");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw Error(ErrorKind::io, "write to '" + path.string() + "' failed");
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void schema_error(const std::string& field, std::size_t line, std::size_t column, const std::string& msg) {
  std::ostringstream os;
  os << "line " << line;
  if (column > 0) os << ", column " << column;
  os << ": " << msg;
  throw ValidationError(ErrorKind::schema, field, line, column, os.str());
}

void expect_header(const CsvTable& table, const std::vector<std::string>& expected) {
  if (table.header.size() != expected.size())
    schema_error("header", 1, 0,
                 "expected " + std::to_string(expected.size()) + " columns, found " +
                     std::to_string(table.header.size()));
  for (std::size_t c = 0; c < expected.size(); ++c)
    if (table.header[c] != expected[c])
      schema_error(expected[c], 1, c + 1, "expected column '" + expected[c] + "', found '" + table.header[c] + "'");
}

std::vector<std::vector<double>> numeric_rows(const CsvTable& table) {
  std::vector<std::vector<double>> out;
  out.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    std::vector<double> vals;
    vals.reserve(row.size());
    for (std::size_t c = 0; c < row.size(); ++c) vals.push_back(parse_double(row[c], table.header[c], r + 2, c + 1));
    out.push_back(std::move(vals));
  }
  return out;
}

double infer_step(const std::vector<std::vector<double>>& rows) {
  if (rows.size() < 2) schema_error("t", 2, 1, "need at least 2 rows to infer the step size");
  const double h = rows[1][0];
  if (rows[0][0] != 0.0) schema_error("t", 2, 1, "first t must be 0");
  if (!(h > 0.0)) schema_error("t", 3, 1, "t must increase");
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const double expected = static_cast<double>(k) * h;
    if (std::abs(rows[k][0] - expected) > 1e-9 * std::max(1.0, std::abs(expected)))
      schema_error("t", k + 2, 1, "t is not on a uniform grid (expected " + format_double(expected) + ")");
  }
  return h;
}

}  // namespace

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::vector<std::string> lines = split(text, '\n');
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) schema_error("header", 1, 0, "empty file");
  for (auto& l : lines)
    if (!l.empty() && l.back() == '\r') l.pop_back();
  table.header = split(lines[0], ',');
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto cells = split(lines[i], ',');
    if (cells.size() != table.header.size())
      schema_error("row", i + 1, 0,
                   "expected " + std::to_string(table.header.size()) + " fields, found " +
                       std::to_string(cells.size()));
    table.rows.push_back(std::move(cells));
  }
  return table;
}

std::string trajectory_csv(const Trajectory& traj) {
  const int n = traj.dim();
  std::string out = "t";
  for (int i = 0; i < n; ++i) out += ",x" + std::to_string(i);
  for (int i = 0; i < n; ++i) out += ",v" + std::to_string(i);
  out += '\n';
  for (std::size_t k = 0; k < traj.size(); ++k) {
    out += format_double(static_cast<double>(k) * traj.h);
    for (int i = 0; i < n; ++i) out += ',' + format_double(traj.points[k][i]);
    for (int i = 0; i < n; ++i) out += ',' + format_double(traj.velocities[k][i]);
    out += '\n';
  }
  return out;
}

Trajectory parse_trajectory_csv(const std::string& text) {
  const CsvTable table = parse_csv(text);
  const std::size_t cols = table.header.size();
  if (cols < 3 || cols % 2 == 0) schema_error("header", 1, 0, "trajectory header must be t,x0..,v0..");
  const int n = static_cast<int>((cols - 1) / 2);
  std::vector<std::string> expected{"t"};
  for (int i = 0; i < n; ++i) expected.push_back("x" + std::to_string(i));
  for (int i = 0; i < n; ++i) expected.push_back("v" + std::to_string(i));
  expect_header(table, expected);
  const auto rows = numeric_rows(table);
  Trajectory traj;
  traj.h = infer_step(rows);
  for (const auto& r : rows) {
    Vector x(n), v(n);
    for (int i = 0; i < n; ++i) {
      x[i] = r[1 + i];
      v[i] = r[1 + n + i];
    }
    traj.points.push_back(std::move(x));
    traj.velocities.push_back(std::move(v));
  }
  return traj;
}

std::string ledr_csv(const DiscreteLedrSeries& series) {
  const int n = series.dim();
  std::string out = "t";
  for (int i = 0; i < n; ++i) out += ",xi" + std::to_string(i);
  out += '\n';
  for (std::size_t k = 0; k < series.size(); ++k) {
    out += format_double(static_cast<double>(k) * series.h);
    for (int i = 0; i < n; ++i) out += ',' + format_double(series.xi[k][i]);
    out += '\n';
  }
  return out;
}

DiscreteLedrSeries parse_ledr_csv(const std::string& text, std::optional<double> h) {
  const CsvTable table = parse_csv(text);
  if (table.header.size() < 2) schema_error("header", 1, 0, "LEDR header must be t,xi0..");
  const int n = static_cast<int>(table.header.size() - 1);
  std::vector<std::string> expected{"t"};
  for (int i = 0; i < n; ++i) expected.push_back("xi" + std::to_string(i));
  expect_header(table, expected);
  if (table.rows.empty()) schema_error("row", 2, 0, "no data rows");
  const auto rows = numeric_rows(table);
  DiscreteLedrSeries s;
  s.origin = SeriesOrigin::measured;
  if (h) {
    if (!(*h > 0.0) || !std::isfinite(*h)) throw ValidationError(ErrorKind::validation, "h", 0, 0, "h must be > 0");
    s.h = *h;
  } else {
    s.h = infer_step(rows);
  }
  for (const auto& r : rows) {
    Vector x(n);
    for (int i = 0; i < n; ++i) x[i] = r[1 + i];
    s.xi.push_back(std::move(x));
  }
  return s;
}

bool operator==(const StabilityRow& a, const StabilityRow& b) {
  return a.K == b.K && a.h == b.h && a.report.lambda == b.report.lambda && a.report.regime == b.report.regime &&
         a.report.omega_d == b.report.omega_d && a.report.max_root_modulus() == b.report.max_root_modulus();
}

std::string stability_csv(const std::vector<StabilityRow>& rows) {
  std::string out = "K,h,lambda,regime,omega_d,max_root_modulus\n";
  for (const auto& r : rows) {
    out += format_double(r.K) + ',' + format_double(r.h) + ',' + format_double(r.report.lambda) + ',' +
           to_string(r.report.regime) + ',' + (r.report.omega_d ? format_double(*r.report.omega_d) : "") + ',' +
           format_double(r.report.max_root_modulus()) + '\n';
  }
  return out;
}

std::vector<StabilityRow> parse_stability_csv(const std::string& text) {
  const CsvTable table = parse_csv(text);
  expect_header(table, {"K", "h", "lambda", "regime", "omega_d", "max_root_modulus"});
  std::vector<StabilityRow> out;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::size_t line = r + 2;
    StabilityRow s;
    s.K = parse_double(row[0], "K", line, 1);
    s.h = parse_double(row[1], "h", line, 2);
    s.report.lambda = parse_double(row[2], "lambda", line, 3);
    const auto regime = regime_from_string(row[3]);
    if (!regime) schema_error("regime", line, 4, "unknown regime '" + row[3] + "'");
    s.report.regime = *regime;
    if (!row[4].empty()) s.report.omega_d = parse_double(row[4], "omega_d", line, 5);
    s.report.roots = characteristic_roots(s.report.lambda);
    const double modulus = parse_double(row[5], "max_root_modulus", line, 6);
    if (std::abs(modulus - s.report.max_root_modulus()) > 1e-12 * std::max(1.0, modulus))
      schema_error("max_root_modulus", line, 6, "inconsistent with lambda");
    out.push_back(std::move(s));
  }
  return out;
}

std::string curvature_estimate_json(const CurvatureEstimate& estimate) {
  using nlohmann::ordered_json;
  const EstimateSummary s = summarize(estimate);
  ordered_json j;
  j["h"] = estimate.h;
  ordered_json ks = ordered_json::array();
  for (std::size_t k = 0; k < estimate.k_values.size(); ++k)
    ks.push_back(estimate.valid[k] ? ordered_json(estimate.k_values[k]) : ordered_json(nullptr));
  j["k_values"] = ks;
  j["valid"] = estimate.valid;
  auto num = [](double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); };
  j["summary"] = {{"n_valid", s.n_valid}, {"median", num(s.median)}, {"q1", num(s.q1)},
                  {"q3", num(s.q3)},       {"iqr", num(s.iqr)}};
  return j.dump(2) + "\n";
}

CurvatureEstimate parse_curvature_estimate_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(ErrorKind::schema, "json", 0, e.byte, e.what());
  }
  try {
    CurvatureEstimate est;
    est.h = j.at("h").get<double>();
    for (const auto& v : j.at("k_values"))
      est.k_values.push_back(v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>());
    for (const auto& v : j.at("valid")) est.valid.push_back(v.get<bool>());
    if (est.valid.size() != est.k_values.size())
      throw ValidationError(ErrorKind::schema, "valid", 0, 0, "k_values and valid differ in length");
    return est;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(ErrorKind::schema, "json", 0, 0, e.what());
  }
}

namespace {

struct ConfigEntry {
  std::string value;
  std::size_t line = 0;
};

using ConfigMap = std::map<std::string, ConfigEntry>;

[[noreturn]] void config_error(const std::string& field, std::size_t line, const std::string& msg) {
  std::ostringstream os;
  os << "config";
  if (line > 0) os << " line " << line;
  os << ": " << field << ": " << msg;
  throw ValidationError(ErrorKind::validation, field, line, 0, os.str());
}

double config_double(const ConfigMap& m, const std::string& key) {
  const auto& e = m.at(key);
  double v = 0.0;
  try {
    v = parse_double(e.value, key, e.line, 0);
  } catch (const ValidationError&) {
    config_error(key, e.line, "'" + e.value + "' is not a number");
  }
  if (!std::isfinite(v)) config_error(key, e.line, "must be finite");
  return v;
}

std::uint64_t config_uint(const ConfigMap& m, const std::string& key) {
  const auto& e = m.at(key);
  std::uint64_t v = 0;
  const auto res = std::from_chars(e.value.data(), e.value.data() + e.value.size(), v);
  if (e.value.empty() || res.ec != std::errc() || res.ptr != e.value.data() + e.value.size())
    config_error(key, e.line, "'" + e.value + "' is not a non-negative integer");
  return v;
}

Vector config_vector(const ConfigMap& m, const std::string& key) {
  const auto& e = m.at(key);
  const auto parts = split(e.value, ',');
  Vector v(static_cast<int>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    try {
      v[static_cast<int>(i)] = parse_double(trim(parts[i]), key, e.line, 0);
    } catch (const ValidationError&) {
      config_error(key, e.line, "'" + e.value + "' is not a comma-separated list of numbers");
    }
    if (!std::isfinite(v[static_cast<int>(i)])) config_error(key, e.line, "entries must be finite");
  }
  return v;
}

WorldDescriptor config_world(const ConfigMap& m, const std::string& prefix) {
  const std::string kind_key = prefix + ".kind";
  if (!m.count(kind_key)) config_error(kind_key, 0, "missing required key");
  const auto& kind = m.at(kind_key);
  auto reject = [&](const std::string& suffix) {
    const std::string key = prefix + "." + suffix;
    if (m.count(key)) config_error(key, m.at(key).line, "does not apply to kind '" + kind.value + "'");
  };
  if (kind.value == "flat") {
    reject("r");
    reject("k");
    int n = 2;
    if (m.count(prefix + ".n")) {
      const auto v = config_uint(m, prefix + ".n");
      if (v < 1 || v > 64) config_error(prefix + ".n", m.at(prefix + ".n").line, "must be between 1 and 64");
      n = static_cast<int>(v);
    }
    return WorldDescriptor::flat(n);
  }
  if (kind.value == "sphere") {
    reject("n");
    reject("k");
    const std::string key = prefix + ".r";
    if (!m.count(key)) config_error(key, kind.line, "sphere needs a radius");
    const double r = config_double(m, key);
    if (!(r > 0.0)) config_error(key, m.at(key).line, "radius must be > 0");
    return WorldDescriptor::sphere(r);
  }
  if (kind.value == "constant_k") {
    reject("n");
    reject("r");
    const std::string key = prefix + ".k";
    if (!m.count(key)) config_error(key, kind.line, "constant_k needs a curvature");
    return WorldDescriptor::constant_k(config_double(m, key));
  }
  config_error(kind_key, kind.line, "unknown world kind '" + kind.value + "' (flat, sphere, constant_k)");
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  static const std::vector<std::string> known = {
      "world_true.kind",  "world_true.n",  "world_true.r",  "world_true.k", "world_model.kind", "world_model.n",
      "world_model.r",    "world_model.k", "x0",            "v0",           "dv",               "h",
      "steps",            "scheme",        "seed",          "out"};
  ConfigMap m;
  const auto lines = split(text, '\n');
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string line = lines[i];
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) config_error("line", i + 1, "expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (std::find(known.begin(), known.end(), key) == known.end()) config_error(key, i + 1, "unknown key");
    if (m.count(key)) config_error(key, i + 1, "duplicate key (first set on line " + std::to_string(m[key].line) + ")");
    m[key] = {value, i + 1};
  }

  ExperimentConfig cfg;
  cfg.world_true = config_world(m, "world_true");
  cfg.world_model = config_world(m, "world_model");
  for (const char* key : {"x0", "v0", "h", "steps"})
    if (!m.count(key)) config_error(key, 0, "missing required key");
  cfg.x0 = config_vector(m, "x0");
  cfg.v0 = config_vector(m, "v0");
  if (m.count("dv")) cfg.dv = config_vector(m, "dv");
  cfg.h = config_double(m, "h");
  if (!(cfg.h > 0.0)) config_error("h", m.at("h").line, "step size must be > 0");
  cfg.steps = config_uint(m, "steps");
  if (cfg.steps < 1) config_error("steps", m.at("steps").line, "must be >= 1");
  if (m.count("scheme")) {
    const auto& e = m.at("scheme");
    if (e.value == "rk4")
      cfg.scheme = Scheme::rk4;
    else if (e.value == "semi_implicit_euler")
      cfg.scheme = Scheme::semi_implicit_euler;
    else
      config_error("scheme", e.line, "unknown scheme '" + e.value + "' (rk4, semi_implicit_euler)");
  }
  if (m.count("seed")) cfg.seed = config_uint(m, "seed");
  if (m.count("out")) cfg.out = m.at("out").value;

  auto line_of = [&](const char* key) { return m.count(key) ? m.at(key).line : std::size_t{0}; };
  const int n = cfg.world_true.dim;
  if (cfg.world_model.dim != n)
    config_error("world_model.kind", line_of("world_model.kind"), "dimension differs from world_true");
  if (cfg.x0.size() != n) config_error("x0", line_of("x0"), "expected " + std::to_string(n) + " entries");
  if (cfg.v0.size() != n) config_error("v0", line_of("v0"), "expected " + std::to_string(n) + " entries");
  if (cfg.dv.size() != 0 && cfg.dv.size() != n)
    config_error("dv", line_of("dv"), "expected " + std::to_string(n) + " entries");
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) { return parse_config(read_text_file(path)); }

void validate_config(const ExperimentConfig& c) {
  if (!(c.h > 0.0) || !std::isfinite(c.h)) config_error("h", 0, "step size must be > 0");
  if (c.steps < 1) config_error("steps", 0, "must be >= 1");
  const int n = c.world_true.dim;
  if (c.world_model.dim != n) config_error("world_model.kind", 0, "dimension differs from world_true");
  if (c.x0.size() != n) config_error("x0", 0, "expected " + std::to_string(n) + " entries");
  if (c.v0.size() != n) config_error("v0", 0, "expected " + std::to_string(n) + " entries");
  if (c.dv.size() != 0 && c.dv.size() != n) config_error("dv", 0, "expected " + std::to_string(n) + " entries");
}

}  // namespace ledr
