#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fdnoma/error.hpp"
#include "fdnoma/monte_carlo.hpp"
#include "fdnoma/numerics.hpp"
#include "fdnoma/ssr_optimizer.hpp"
#include "fdnoma/system_model.hpp"

namespace fdnoma {

struct Sweep {
  std::string field;
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
};

/// start, start + step, ... up to stop (inclusive within rounding).
std::vector<double> sweep_values(const Sweep& sweep);

/// One experiment configuration as read from a scenario file. Defaults are
/// the baseline vehicle geometry (10/10/15 m, nu = 3) with a far
/// eavesdropper (40/30 m).
struct Scenario {
  double rho_db = 30.0;
  double rho_si_db = -10.0;
  double nu = 3.0;
  double d_sr = 10.0;
  double d_rd1 = 10.0;
  double d_rd2 = 15.0;
  double d_se = 40.0;
  double d_re = 30.0;
  double d_re_ratio = 0.0;  // > 0 ties d_re = d_re_ratio * d_se
  double a_s = 0.2;
  double a_r = 0.2;
  double sigma_si_sq = kDefaultSelfInterferenceVariance;
  std::uint64_t n_realizations = kDefaultAnalysisRealizations;
  std::uint64_t seed = 1;
  McMode mc_mode = McMode::kA;
  std::optional<Sweep> sweep;

  std::size_t sca_starts = kDefaultRandomStarts;
  double sca_eps = 1e-4;
  int sca_max_iter = 50;
  double quad_rel_tol = 1e-8;
};

/// Scenario file problem, reported with its 1-based line number (0 when
/// the problem is not tied to a line).
class ScenarioError : public ConfigError {
 public:
  ScenarioError(std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// One `key = value` assignment.
struct Override {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

/// Splits line-oriented `key = value` text (with `#` comments) into assignments.
std::vector<Override> parse_overrides(std::string_view text);

/// Applies assignments in order, validating each value.
void apply_overrides(Scenario& scenario, std::span<const Override> overrides);

/// Defaults, then the file's assignments, then whole-scenario validation.
Scenario parse_scenario(std::string_view text);

/// Throws ScenarioError if the scenario (including every sweep point) does
/// not map onto valid SystemParams.
void validate_scenario(const Scenario& scenario);

/// Sets a numeric sweepable field by name (a_s, a_r, rho_db, rho_si_db,
/// nu, d_sr, d_rd1, d_rd2, d_se, d_re).
void set_sweep_field(Scenario& scenario, std::string_view field, double value);

SystemParams to_params(const Scenario& scenario);

/// Rectangular table of reals plus the seed, sample count and version that produced it.
struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::uint64_t seed = 0;
  std::uint64_t n = 0;
  std::string version;

  void add_row(std::vector<double> row);
  double at(std::size_t row, std::string_view column) const;
  std::size_t column_index(std::string_view column) const;
};

/// Version string stamped into result tables.
std::string_view library_version() noexcept;

/// Header then rows, comma-separated, LF line endings, reals with 12
/// significant digits.
void write_csv(const ResultTable& table, std::ostream& out);
void write_csv(const ResultTable& table, const std::string& path);

struct RunOptions {
  unsigned workers = 1;
};

/// Analytical columns for every sweep point (or the single point).
ResultTable run_analysis(const Scenario& scenario, const RunOptions& options = {});

/// Monte Carlo columns (both secrecy modes plus mc_ssr for the selected mode).
ResultTable run_simulation(const Scenario& scenario, const RunOptions& options = {});

/// Analytical and Monte Carlo columns side by side.
ResultTable run_analysis_and_simulation(const Scenario& scenario, const RunOptions& options = {});

/// SSROT vs FPAPT per-block comparison summary.
struct OptimizationSummary {
  McEstimate ssrot;
  McEstimate fpapt;
  McEstimate gain;          // ssrot - fpapt per block
  double frac_not_worse = 0.0;  // share of blocks with ssrot >= fpapt
};

/// Optimizes every block in [0, n) of the scenario's channel process.
OptimizationSummary compare_ssrot_fpapt(const Scenario& scenario, std::uint64_t n, unsigned workers = 1);

/// SSROT vs FPAPT for every sweep point of the scenario.
ResultTable run_optimization(const Scenario& scenario, const RunOptions& options = {});

struct FigureOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> n;
  unsigned workers = 1;
};

/// Base scenario of a canned recipe (before overrides), id in 2..7.
Scenario figure_scenario(int id);

/// Reproduces the configuration of figure `id`. Overrides are applied on
/// top of the recipe; the per-curve eavesdropper geometries of figures 5
/// and 7 replace any d_se / d_re override.
ResultTable run_figure(int id, std::span<const Override> overrides = {}, const FigureOptions& options = {});

}  // namespace fdnoma
