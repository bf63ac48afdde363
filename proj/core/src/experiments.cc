#include "fdnoma/experiments.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "fdnoma/parallel.hpp"
#include "fdnoma/secrecy_analysis.hpp"

#ifndef FDNOMA_VERSION
#define FDNOMA_VERSION "v0.0.0-unknown"
#endif

namespace fdnoma {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& message) { throw ScenarioError(line, message); }

double parse_real(std::string_view text, const Override& o) {
  text = trim(text);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    fail(o.line, "cannot parse '" + std::string(text) + "' as a number for key '" + o.key + "'");
  }
  return value;
}

std::uint64_t parse_count(std::string_view text, const Override& o) {
  const double value = parse_real(text, o);
  if (value < 0.0 || value != std::floor(value) || value > 9.0e15) {
    fail(o.line, "'" + o.key + "' must be a non-negative integer");
  }
  return static_cast<std::uint64_t>(value);
}

void require(bool ok, const Override& o, const std::string& what) {
  if (!ok) fail(o.line, "'" + o.key + "' " + what);
}

bool is_allocation_field(std::string_view f) { return f == "a_s" || f == "a_r"; }

bool is_distance_field(std::string_view f) {
  return f == "d_sr" || f == "d_rd1" || f == "d_rd2" || f == "d_se" || f == "d_re";
}

bool is_sweep_field(std::string_view f) {
  return is_allocation_field(f) || is_distance_field(f) || f == "rho_db" || f == "rho_si_db" || f == "nu";
}

void check_field_value(std::string_view field, double value, const Override& o) {
  if (is_allocation_field(field)) {
    require(value >= 0.0 && value <= kMaxPowerAllocation, o, "power allocation must lie in [0, 1/2]");
  } else if (is_distance_field(field) || field == "nu") {
    require(value > 0.0, o, "must be positive");
  }
}

Sweep parse_sweep(const Override& o) {
  std::vector<std::string_view> parts;
  std::string_view rest = o.value;
  for (;;) {
    const auto comma = rest.find(',');
    parts.push_back(trim(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  require(parts.size() == 4, o, "expects 'field, start, stop, step'");
  Sweep s;
  s.field = std::string(parts[0]);
  require(is_sweep_field(s.field), o, "names an unknown sweep field '" + s.field + "'");
  s.start = parse_real(parts[1], o);
  s.stop = parse_real(parts[2], o);
  s.step = parse_real(parts[3], o);
  require(s.step > 0.0, o, "step must be positive");
  require(s.stop >= s.start, o, "stop must not be below start");
  check_field_value(s.field, s.start, o);
  check_field_value(s.field, s.stop, o);
  require(sweep_values(s).size() <= 100000, o, "has too many points");
  return s;
}

void apply_one(Scenario& sc, const Override& o) {
  const std::string& k = o.key;
  auto real = [&] { return parse_real(o.value, o); };

  if (is_sweep_field(k)) {
    const double v = real();
    check_field_value(k, v, o);
    set_sweep_field(sc, k, v);
  } else if (k == "d_re_ratio") {
    sc.d_re_ratio = real();
    require(sc.d_re_ratio >= 0.0, o, "must be non-negative");
  } else if (k == "sigma_si_sq") {
    sc.sigma_si_sq = real();
    require(sc.sigma_si_sq > 0.0, o, "must be positive");
  } else if (k == "n_realizations" || k == "n") {
    sc.n_realizations = parse_count(o.value, o);
    require(sc.n_realizations >= 2, o, "must be at least 2");
  } else if (k == "seed") {
    sc.seed = parse_count(o.value, o);
  } else if (k == "mc_mode" || k == "mode") {
    const std::string m = lower(trim(o.value));
    if (m == "a") {
      sc.mc_mode = McMode::kA;
    } else if (m == "b") {
      sc.mc_mode = McMode::kB;
    } else {
      fail(o.line, "'" + k + "' must be 'a' or 'b'");
    }
  } else if (k == "sweep") {
    sc.sweep = parse_sweep(o);
  } else if (k == "sca_starts") {
    sc.sca_starts = parse_count(o.value, o);
    require(sc.sca_starts <= 1000, o, "must not exceed 1000");
  } else if (k == "sca_eps") {
    sc.sca_eps = real();
    require(sc.sca_eps > 0.0, o, "must be positive");
  } else if (k == "sca_max_iter") {
    const auto it = parse_count(o.value, o);
    require(it >= 1 && it <= 100000, o, "must lie in [1, 100000]");
    sc.sca_max_iter = static_cast<int>(it);
  } else if (k == "quad_rel_tol") {
    sc.quad_rel_tol = real();
    require(sc.quad_rel_tol > 0.0 && sc.quad_rel_tol <= 1e-2, o, "must lie in (0, 1e-2]");
  } else {
    fail(o.line, "unknown key '" + k + "'");
  }
}

std::string format_real(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// ---- sweep tables --------------------------------------------------------

struct Point {
  Scenario scenario;
  SystemParams params;
};

std::vector<Point> sweep_points(const Scenario& base) {
  std::vector<Point> points;
  if (!base.sweep) {
    points.push_back({base, to_params(base)});
    return points;
  }
  for (double v : sweep_values(*base.sweep)) {
    Scenario sc = base;
    set_sweep_field(sc, base.sweep->field, v);
    points.push_back({sc, to_params(sc)});
  }
  return points;
}

const std::vector<std::string> kPointColumns = {"rho_db", "rho_si_db", "a_s", "a_r", "d_se", "d_re"};
const std::vector<std::string> kAnalysisColumns = {"c_d1", "c_d2", "ce_d1", "ce_d2_ub", "sec_lb"};
const std::vector<std::string> kSimulationColumns = {
    "mc_c_d1",  "mc_c_d1_se",  "mc_c_d2",   "mc_c_d2_se",   "mc_ce_d1",  "mc_ce_d1_se", "mc_ce_d2",
    "mc_ce_d2_se", "mc_mode_a", "mc_mode_a_se", "mc_mode_b", "mc_mode_b_se", "mc_ssr",   "mc_ssr_se"};

void append(std::vector<std::string>& to, const std::vector<std::string>& from) {
  to.insert(to.end(), from.begin(), from.end());
}

double effective_d_re(const Scenario& sc) { return sc.d_re_ratio > 0.0 ? sc.d_re_ratio * sc.d_se : sc.d_re; }

ResultTable sweep_table(const Scenario& scenario, bool analysis, bool simulation, unsigned workers) {
  validate_scenario(scenario);
  ResultTable table;
  table.columns = kPointColumns;
  if (analysis) append(table.columns, kAnalysisColumns);
  if (simulation) append(table.columns, kSimulationColumns);
  table.columns.push_back("seed");
  table.columns.push_back("n");
  table.seed = scenario.seed;
  table.n = simulation ? scenario.n_realizations : 0;
  table.version = std::string(library_version());

  numerics::QuadOptions quad;
  quad.rel_tol = scenario.quad_rel_tol;

  for (const Point& p : sweep_points(scenario)) {
    const Scenario& sc = p.scenario;
    std::vector<double> row = {sc.rho_db, sc.rho_si_db, sc.a_s, sc.a_r, sc.d_se, effective_d_re(sc)};
    if (analysis) {
      const AnalyticalReport r = analyze(p.params, quad);
      row.insert(row.end(), {r.c_d1, r.c_d2, r.ce_d1, r.ce_d2_ub, r.sec_lb});
    }
    if (simulation) {
      const ErgodicTerms t = estimate_ergodic_terms(p.params, sc.n_realizations, sc.seed, workers);
      const double mode_a = secrecy_mode_a(t);
      const double mode_a_se = secrecy_mode_a_std_err(t);
      const McEstimate mode_b = t.inst_secrecy;
      const bool use_a = sc.mc_mode == McMode::kA;
      row.insert(row.end(), {t.c_d1.mean, t.c_d1.std_err, t.c_d2.mean, t.c_d2.std_err, t.ce_d1.mean,
                             t.ce_d1.std_err, t.ce_d2.mean, t.ce_d2.std_err, mode_a, mode_a_se, mode_b.mean,
                             mode_b.std_err, use_a ? mode_a : mode_b.mean, use_a ? mode_a_se : mode_b.std_err});
    }
    row.push_back(static_cast<double>(sc.seed));
    row.push_back(simulation ? static_cast<double>(sc.n_realizations) : 0.0);
    table.add_row(std::move(row));
  }
  return table;
}

void append_rows(ResultTable& into, const ResultTable& from) {
  if (into.columns.empty()) {
    into = from;
    return;
  }
  for (const auto& row : from.rows) into.add_row(row);
}

struct EveGeometry {
  double d_se;
  double d_re;
};

}  // namespace

// ---- public API ------------------------------------------------------------

std::vector<double> sweep_values(const Sweep& sweep) {
  std::vector<double> values;
  if (!(sweep.step > 0.0) || sweep.stop < sweep.start) return values;
  const double span = (sweep.stop - sweep.start) / sweep.step;
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  values.reserve(count);
  for (std::size_t k = 0; k < count; ++k) values.push_back(sweep.start + static_cast<double>(k) * sweep.step);
  return values;
}

ScenarioError::ScenarioError(std::size_t line, const std::string& message)
    : ConfigError(line > 0 ? "scenario line " + std::to_string(line) + ": " + message : "scenario: " + message),
      line_(line) {}

std::vector<Override> parse_overrides(std::string_view text) {
  std::vector<Override> out;
  std::size_t line_no = 0;
  while (!text.empty() || line_no == 0) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (text.empty()) break;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
    Override o;
    o.key = lower(trim(line.substr(0, eq)));
    o.value = std::string(trim(line.substr(eq + 1)));
    o.line = line_no;
    if (o.key.empty()) fail(line_no, "missing key before '='");
    if (o.value.empty()) fail(line_no, "missing value for key '" + o.key + "'");
    out.push_back(std::move(o));
    if (text.empty()) break;
  }
  return out;
}

void apply_overrides(Scenario& scenario, std::span<const Override> overrides) {
  for (const Override& o : overrides) apply_one(scenario, o);
}

void set_sweep_field(Scenario& sc, std::string_view field, double value) {
  if (field == "a_s") sc.a_s = value;
  else if (field == "a_r") sc.a_r = value;
  else if (field == "rho_db") sc.rho_db = value;
  else if (field == "rho_si_db") sc.rho_si_db = value;
  else if (field == "nu") sc.nu = value;
  else if (field == "d_sr") sc.d_sr = value;
  else if (field == "d_rd1") sc.d_rd1 = value;
  else if (field == "d_rd2") sc.d_rd2 = value;
  else if (field == "d_se") sc.d_se = value;
  else if (field == "d_re") sc.d_re = value;
  else throw ScenarioError(0, "unknown sweep field '" + std::string(field) + "'");
}

SystemParams to_params(const Scenario& sc) {
  Topology topo;
  topo.d_sr = sc.d_sr;
  topo.d_rd1 = sc.d_rd1;
  topo.d_rd2 = sc.d_rd2;
  topo.d_se = sc.d_se;
  topo.d_re = effective_d_re(sc);
  return make_params(sc.rho_db, sc.rho_si_db, sc.a_s, sc.a_r, topo, sc.nu, sc.sigma_si_sq);
}

void validate_scenario(const Scenario& scenario) {
  try {
    for (const Point& p : sweep_points(scenario)) (void)p;
  } catch (const ScenarioError&) {
    throw;
  } catch (const ConfigError& e) {
    throw ScenarioError(0, e.what());
  }
}

Scenario parse_scenario(std::string_view text) {
  Scenario sc;
  apply_overrides(sc, parse_overrides(text));
  validate_scenario(sc);
  return sc;
}

void ResultTable::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("ResultTable: row has " + std::to_string(row.size()) + " values for " +
                           std::to_string(columns.size()) + " columns");
  }
  rows.push_back(std::move(row));
}

std::size_t ResultTable::column_index(std::string_view column) const {
  const auto it = std::find(columns.begin(), columns.end(), column);
  if (it == columns.end()) throw std::out_of_range("ResultTable: no column '" + std::string(column) + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

double ResultTable::at(std::size_t row, std::string_view column) const { return rows.at(row).at(column_index(column)); }

std::string_view library_version() noexcept { return FDNOMA_VERSION; }

void write_csv(const ResultTable& table, std::ostream& out) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out << ',';
    out << table.columns[c];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      out << format_real(row[c]);
    }
    out << '\n';
  }
}

void write_csv(const ResultTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_csv(table, out);
  out.flush();
  if (!out) throw std::runtime_error("error while writing '" + path + "'");
}

ResultTable run_analysis(const Scenario& scenario, const RunOptions&) {
  return sweep_table(scenario, true, false, 1);
}

ResultTable run_simulation(const Scenario& scenario, const RunOptions& options) {
  return sweep_table(scenario, false, true, options.workers);
}

ResultTable run_analysis_and_simulation(const Scenario& scenario, const RunOptions& options) {
  return sweep_table(scenario, true, true, options.workers);
}

OptimizationSummary compare_ssrot_fpapt(const Scenario& scenario, std::uint64_t n, unsigned workers) {
  if (n < 2) throw ConfigError("optimizer comparison needs at least 2 realizations");
  const SystemParams params = to_params(scenario);
  const ScaOptions sca{scenario.sca_eps, scenario.sca_max_iter};

  std::vector<double> ssrot(n), fpapt(n);
  constexpr std::uint64_t kChunk = 64;
  const std::uint64_t chunks = (n + kChunk - 1) / kChunk;
  parallel_for(chunks, workers, [&](std::size_t c) {
    const std::uint64_t last = std::min(n, (c + 1) * kChunk);
    for (std::uint64_t i = c * kChunk; i < last; ++i) {
      const ChannelRealization ch = sample_realization(params.profile, scenario.seed, i);
      const DcCoefficients k = dc_coefficients(params.rho, params.rho_si, ch);
      const auto starts = random_starts(scenario.seed, i, scenario.sca_starts);
      ssrot[i] = sca_optimize(k, starts, sca).best_ssr;
      fpapt[i] = fpapt_baseline(k);
    }
  });

  RunningStats s, f, g;
  std::uint64_t not_worse = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    s.push(ssrot[i]);
    f.push(fpapt[i]);
    g.push(ssrot[i] - fpapt[i]);
    if (ssrot[i] >= fpapt[i]) ++not_worse;
  }
  return {s.estimate(), f.estimate(), g.estimate(), static_cast<double>(not_worse) / static_cast<double>(n)};
}

ResultTable run_optimization(const Scenario& scenario, const RunOptions& options) {
  validate_scenario(scenario);
  ResultTable table;
  table.columns = kPointColumns;
  append(table.columns, {"ssrot", "ssrot_se", "fpapt", "fpapt_se", "gain", "gain_se", "frac_not_worse", "seed", "n"});
  table.seed = scenario.seed;
  table.n = scenario.n_realizations;
  table.version = std::string(library_version());
  for (const Point& p : sweep_points(scenario)) {
    const Scenario& sc = p.scenario;
    const OptimizationSummary s = compare_ssrot_fpapt(sc, sc.n_realizations, options.workers);
    table.add_row({sc.rho_db, sc.rho_si_db, sc.a_s, sc.a_r, sc.d_se, effective_d_re(sc), s.ssrot.mean,
                   s.ssrot.std_err, s.fpapt.mean, s.fpapt.std_err, s.gain.mean, s.gain.std_err, s.frac_not_worse,
                   static_cast<double>(sc.seed), static_cast<double>(sc.n_realizations)});
  }
  return table;
}

Scenario figure_scenario(int id) {
  Scenario sc;  // 30 dB, -10 dB residual SI, 40/30 m eavesdropper
  switch (id) {
    case 2:
    case 3:
      sc.rho_db = id == 2 ? 30.0 : 10.0;
      sc.a_r = 0.14;
      sc.sweep = Sweep{"a_s", 0.02, 0.48, 0.02};
      break;
    case 4:
      sc.d_re_ratio = 0.5;
      sc.sweep = Sweep{"d_se", 10.0, 200.0, 10.0};
      break;
    case 5:
      sc.sweep = Sweep{"rho_db", 0.0, 40.0, 2.0};
      break;
    case 6:
      sc.sweep = Sweep{"rho_si_db", -30.0, 10.0, 2.0};
      break;
    case 7:
      sc.n_realizations = kDefaultOptimizerRealizations;
      sc.mc_mode = McMode::kB;
      break;
    default:
      throw ConfigError("unknown figure id " + std::to_string(id) + " (expected 2..7)");
  }
  return sc;
}

ResultTable run_figure(int id, std::span<const Override> overrides, const FigureOptions& options) {
  Scenario sc = figure_scenario(id);
  apply_overrides(sc, overrides);
  if (options.seed) sc.seed = *options.seed;
  if (options.n) sc.n_realizations = *options.n;
  const RunOptions run{options.workers};

  if (id == 5 || id == 7) {
    const std::vector<EveGeometry> geometries =
        id == 5 ? std::vector<EveGeometry>{{25.0, 20.0}, {30.0, 20.0}, {40.0, 30.0}}
                : std::vector<EveGeometry>{{40.0, 30.0}, {25.0, 20.0}};
    ResultTable table;
    for (const EveGeometry& g : geometries) {
      Scenario curve = sc;
      curve.d_se = g.d_se;
      curve.d_re = g.d_re;
      curve.d_re_ratio = 0.0;
      append_rows(table, id == 5 ? run_analysis_and_simulation(curve, run) : run_optimization(curve, run));
    }
    return table;
  }
  return run_analysis_and_simulation(sc, run);
}

}  // namespace fdnoma
