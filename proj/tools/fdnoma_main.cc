// fdnoma: analytical / Monte Carlo / optimizer sweeps as CSV.
//
//   fdnoma analyze  --scenario s.txt --out a.csv
//   fdnoma simulate --scenario s.txt --n 100000 --seed 7
//   fdnoma optimize --scenario s.txt --n 1000
//   fdnoma figure 2 --n 100000 --workers 4
//   fdnoma selftest
//
// Exit codes: 0 ok, 1 configuration or I/O error, 2 numerical failure.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fdnoma/channel_sampler.hpp"
#include "fdnoma/experiments.hpp"
#include "fdnoma/numerics.hpp"
#include "fdnoma/secrecy_analysis.hpp"
#include "fdnoma/ssr_optimizer.hpp"
#include "oracles.hpp"

namespace {

struct Common {
  std::string scenario_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> n;
  std::string out;
  std::string mode;
  unsigned workers = 1;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--scenario", c.scenario_path, "scenario file (key = value lines)");
  cmd->add_option("--seed", c.seed, "channel seed");
  cmd->add_option("--n", c.n, "number of channel realizations");
  cmd->add_option("--out", c.out, "CSV output path (default: stdout)");
  cmd->add_option("--mode", c.mode, "Monte Carlo secrecy mode")->check(CLI::IsMember({"a", "b"}));
  cmd->add_option("--workers", c.workers, "worker threads (0 = all cores)");
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw fdnoma::ConfigError("cannot read scenario file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Scenario-file assignments followed by the command-line flags, which win.
std::vector<fdnoma::Override> collect_overrides(const Common& c) {
  std::vector<fdnoma::Override> ov;
  if (!c.scenario_path.empty()) ov = fdnoma::parse_overrides(slurp(c.scenario_path));
  if (c.seed) ov.push_back({"seed", std::to_string(*c.seed), 0});
  if (c.n) ov.push_back({"n_realizations", std::to_string(*c.n), 0});
  if (!c.mode.empty()) ov.push_back({"mc_mode", c.mode, 0});
  return ov;
}

void emit(const fdnoma::ResultTable& table, const std::string& out) {
  if (out.empty()) {
    fdnoma::write_csv(table, std::cout);
    std::cout.flush();
    if (!std::cout) throw std::runtime_error("error writing to stdout");
  } else {
    fdnoma::write_csv(table, out);
  }
}

// Fast subset of the oracle suites: each line is PASS/FAIL <name>.
int selftest() {
  using namespace fdnoma;
  int failures = 0;
  auto report = [&](bool ok, const char* name, double worst) {
    std::printf("%s %s (worst %.3g)\n", ok ? "PASS" : "FAIL", name, worst);
    if (!ok) ++failures;
  };

  double worst = 0.0;
  for (int i = 0; i <= 60; ++i) {
    const double z = std::pow(10.0, -6.0 + i * (std::log10(50.0) + 6.0) / 60.0);
    const double ref = oracle::e1(z);
    worst = std::max(worst, std::fabs(numerics::exp_integral_e1(z) - ref) / ref);
  }
  report(worst < 1e-10, "exp_integral_e1 vs series/continued-fraction oracle", worst);

  worst = 0.0;
  for (double a_s : {0.05, 0.1, 0.25, 0.45}) {
    const SystemParams p = make_params(30, -10, a_s, 0.14, Topology{});
    const RateParams rp = make_rate_params(p);
    const double ref = oracle::expected_log2_from_survival(
        [&](double x) { return oracle::eff_d1_survival(x, rp.s, rp.lambda_rr, rp.beta); });
    worst = std::max(worst, std::fabs(ergodic_capacity_d1(rp) - ref) / ref);
    const double ref_e = oracle::expected_log2_from_survival(
        [&](double x) { return oracle::hypoexp_survival(x, rp.pi_se, rp.pi_re); });
    worst = std::max(worst, std::fabs(ergodic_eve_capacity_d1(rp) - ref_e) / ref_e);
  }
  report(worst < 1e-7, "closed-form capacities vs independent quadrature", worst);

  worst = 0.0;
  const FadingProfile prof = variances_from_topology(Topology{}, 3.0);
  const auto blocks = sample_batch(prof, 11, 200);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& ch = blocks[i];
    const double a_s = 0.5 * CounterRng(5).uniform(2 * i);
    const double a_r = 0.5 * CounterRng(5).uniform(2 * i + 1);
    const double rho = 1000.0, rho_si = 0.1;
    const oracle::Block b{rho, rho_si, a_s, a_r, ch.g_sr, ch.g_rd1, ch.g_rd2, ch.g_se, ch.g_re, ch.g_si};
    worst = std::max(worst, std::fabs(true_ssr(dc_coefficients(rho, rho_si, ch), a_s, a_r) -
                                      oracle::secrecy_sum_longhand(b)));
  }
  report(worst < 1e-12, "true_ssr vs longhand secrecy sum", worst);

  worst = 0.0;
  for (std::size_t i = 0; i < 50; ++i) {
    const DcCoefficients k = dc_coefficients(1000.0, 0.1, blocks[i]);
    const auto starts = random_starts(3, i, 2);
    const OptimizerTrace t = sca_optimize(k, starts);
    worst = std::max(worst, fpapt_baseline(k) - t.best_ssr);
  }
  report(worst <= 0.0, "SSROT >= FPAPT", worst);

  return failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FD-NOMA V2V secrecy analysis and power allocation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fdnoma::library_version()));

  Common common;
  auto* analyze = app.add_subcommand("analyze", "analytical capacities over the scenario sweep");
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimates over the scenario sweep");
  auto* optimize = app.add_subcommand("optimize", "SSROT vs FPAPT over the scenario sweep");
  auto* figure = app.add_subcommand("figure", "canned figure recipe (2..7)");
  auto* self = app.add_subcommand("selftest", "oracle checks");
  for (auto* cmd : {analyze, simulate, optimize, figure}) add_common(cmd, common);
  int figure_id = 0;
  figure->add_option("id", figure_id, "figure number")->required()->check(CLI::Range(2, 7));

  CLI11_PARSE(app, argc, argv);

  std::cerr << "fdnoma " << fdnoma::library_version() << '\n';
  try {
    if (self->parsed()) return selftest();

    const auto overrides = collect_overrides(common);
    const fdnoma::RunOptions run{common.workers};
    fdnoma::ResultTable table;
    if (figure->parsed()) {
      table = fdnoma::run_figure(figure_id, overrides, {std::nullopt, std::nullopt, common.workers});
    } else {
      fdnoma::Scenario sc;
      fdnoma::apply_overrides(sc, overrides);
      fdnoma::validate_scenario(sc);
      if (analyze->parsed()) table = fdnoma::run_analysis(sc, run);
      if (simulate->parsed()) table = fdnoma::run_simulation(sc, run);
      if (optimize->parsed()) {
        const bool n_given = std::any_of(overrides.begin(), overrides.end(), [](const auto& o) {
          return o.key == "n" || o.key == "n_realizations";
        });
        if (!n_given) sc.n_realizations = fdnoma::kDefaultOptimizerRealizations;
        table = fdnoma::run_optimization(sc, run);
      }
    }
    emit(table, common.out);
  } catch (const fdnoma::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const fdnoma::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
