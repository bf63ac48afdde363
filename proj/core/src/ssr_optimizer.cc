#include "fdnoma/ssr_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fdnoma/error.hpp"
#include "fdnoma/system_model.hpp"

namespace fdnoma {
namespace {

constexpr double kHalf = kMaxPowerAllocation;
constexpr double kGoldenTol = 1e-8;
// A candidate must beat the anchor by this much to be accepted.
constexpr double kImprovementTol = 1e-12;

struct Maximum {
  double x;
  double value;
};

// Golden-section search for a unimodal function on [lo, hi]. The end
// points are checked too, since concave maxima often sit on the box.
template <class F>
Maximum golden_max(F&& f, double lo, double hi) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo;
  double b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > kGoldenTol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    }
  }
  Maximum best = f1 >= f2 ? Maximum{x1, f1} : Maximum{x2, f2};
  for (double edge : {lo, hi}) {
    const double v = f(edge);
    if (v > best.value) best = {edge, v};
  }
  return best;
}

// Maximizes a jointly concave F over the box; the partial maximum over a_r
// is concave in a_s, so the nested search is exact up to tolerance.
template <class F>
Allocation box_max(F&& f) {
  auto inner = [&](double a_s) {
    return golden_max([&](double a_r) { return f(Allocation{a_s, a_r}); }, 0.0, kHalf);
  };
  const Maximum outer = golden_max([&](double a_s) { return inner(a_s).value; }, 0.0, kHalf);
  return {outer.x, inner(outer.x).x};
}

}  // namespace

DcCoefficients dc_coefficients(double rho, double rho_si, const ChannelRealization& ch) noexcept {
  return {rho * ch.g_sr, rho_si * ch.g_si + 1.0, rho * ch.g_rd1, rho * ch.g_rd2, rho * ch.g_se, rho * ch.g_re};
}

std::array<double, kBranchCount> rate_differences(const DcCoefficients& k, Allocation a) noexcept {
  const double g_e = std::log2(1.0 + a.a_s * k.C + a.a_r * k.D);
  const double eve_total = std::log2(k.C + k.D + 1.0);
  std::array<double, kBranchCount> d{};
  d[kD1Relay] = std::log2(1.0 + a.a_s * k.A / k.B) - g_e;
  d[kD1Own] = std::log2(1.0 + a.a_r * k.E1v) - g_e;
  d[kD2Relay] = (std::log2(k.A + k.B) - eve_total) + g_e - std::log2(a.a_s * k.A + k.B);
  d[kD2Own] = (std::log2(k.E2v + 1.0) - eve_total) + g_e - std::log2(a.a_r * k.E2v + 1.0);
  d[kD2Sic] = (std::log2(k.E1v + 1.0) - eve_total) + g_e - std::log2(a.a_r * k.E1v + 1.0);
  return d;
}

double true_ssr(const DcCoefficients& k, double a_s, double a_r) noexcept {
  const auto d = rate_differences(k, {a_s, a_r});
  return std::max(0.0, std::min(d[kD1Relay], d[kD1Own])) +
         std::max(0.0, std::min({d[kD2Relay], d[kD2Own], d[kD2Sic]}));
}

Tangent log2_affine_tangent(double u0, double us, double ur, Allocation anchor) noexcept {
  const double u = u0 + us * anchor.a_s + ur * anchor.a_r;
  const double scale = 1.0 / (u * std::numbers::ln2);
  return {anchor, std::log2(u), us * scale, ur * scale};
}

SurrogateModel build_surrogate(const DcCoefficients& k, Allocation anchor) noexcept {
  SurrogateModel m;
  m.coeffs = k;
  m.anchor = anchor;
  m.eve = log2_affine_tangent(1.0, k.C, k.D, anchor);
  m.relay_d2 = log2_affine_tangent(k.B, k.A, 0.0, anchor);
  m.own_d2 = log2_affine_tangent(1.0, 0.0, k.E2v, anchor);
  m.sic_d2 = log2_affine_tangent(1.0, 0.0, k.E1v, anchor);
  const double eve_total = std::log2(k.C + k.D + 1.0);
  m.kappa_relay = std::log2(k.A + k.B) - eve_total;
  m.kappa_own = std::log2(k.E2v + 1.0) - eve_total;
  m.kappa_sic = std::log2(k.E1v + 1.0) - eve_total;
  return m;
}

std::array<double, kBranchCount> SurrogateModel::rhs(Allocation a) const noexcept {
  const DcCoefficients& k = coeffs;
  const double g_e = std::log2(1.0 + a.a_s * k.C + a.a_r * k.D);
  const double l_e = eve.at(a);
  std::array<double, kBranchCount> r{};
  r[kD1Relay] = std::log2(1.0 + a.a_s * k.A / k.B) - l_e;
  r[kD1Own] = std::log2(1.0 + a.a_r * k.E1v) - l_e;
  r[kD2Relay] = kappa_relay + g_e - relay_d2.at(a);
  r[kD2Own] = kappa_own + g_e - own_d2.at(a);
  r[kD2Sic] = kappa_sic + g_e - sic_d2.at(a);
  return r;
}

double SurrogateModel::user_d1(Allocation a) const noexcept {
  const auto r = rhs(a);
  return std::min(r[kD1Relay], r[kD1Own]);
}

double SurrogateModel::user_d2(Allocation a) const noexcept {
  const auto r = rhs(a);
  return std::min({r[kD2Relay], r[kD2Own], r[kD2Sic]});
}

double SurrogateModel::objective(Allocation a) const noexcept {
  const auto r = rhs(a);
  return std::max(0.0, std::min(r[kD1Relay], r[kD1Own])) +
         std::max(0.0, std::min({r[kD2Relay], r[kD2Own], r[kD2Sic]}));
}

double SurrogateModel::unclipped_objective(Allocation a) const noexcept {
  const auto r = rhs(a);
  return std::min(r[kD1Relay], r[kD1Own]) + std::min({r[kD2Relay], r[kD2Own], r[kD2Sic]});
}

SubproblemSolution solve_subproblem(const SurrogateModel& model) {
  const Allocation candidates[] = {
      box_max([&](Allocation a) { return model.user_d1(a); }),
      box_max([&](Allocation a) { return model.user_d2(a); }),
      box_max([&](Allocation a) { return model.unclipped_objective(a); }),
  };

  Allocation best = model.anchor;
  double best_value = model.objective(best);
  for (const Allocation& c : candidates) {
    const double v = model.objective(c);
    if (v > best_value + kImprovementTol) {
      best = c;
      best_value = v;
    }
  }
  const auto r = model.rhs(best);
  SubproblemSolution sol;
  sol.a = best;
  sol.t1 = std::max(0.0, std::min(r[kD1Relay], r[kD1Own]));
  sol.t2 = std::max(0.0, std::min({r[kD2Relay], r[kD2Own], r[kD2Sic]}));
  return sol;
}

OptimizerTrace sca_run(const DcCoefficients& coeffs, Allocation start, const ScaOptions& options) {
  if (!(options.eps > 0.0)) throw ConfigError("sca: eps must be positive");
  if (options.max_iter < 1) throw ConfigError("sca: max_iter must be at least 1");
  if (!(start.a_s >= 0.0 && start.a_s <= kHalf && start.a_r >= 0.0 && start.a_r <= kHalf)) {
    std::ostringstream os;
    os << "sca: start (" << start.a_s << ", " << start.a_r << ") outside [0, 1/2]^2";
    throw ConfigError(os.str());
  }

  OptimizerTrace trace;
  trace.start = start;
  const double ssr0 = true_ssr(coeffs, start.a_s, start.a_r);
  trace.iterations.push_back({0, start, ssr0, ssr0, ssr0, 0.0});
  trace.best = start;
  trace.best_ssr = ssr0;

  Allocation current = start;
  for (int l = 1; l <= options.max_iter; ++l) {
    const SurrogateModel model = build_surrogate(coeffs, current);
    const SubproblemSolution sol = solve_subproblem(model);
    const double ds = sol.a.a_s - current.a_s;
    const double dr = sol.a.a_r - current.a_r;
    current = sol.a;

    IterationRecord rec;
    rec.iteration = l;
    rec.a = current;
    rec.surrogate_objective = sol.objective();
    rec.surrogate_unclipped = model.unclipped_objective(current);
    rec.true_ssr = true_ssr(coeffs, current.a_s, current.a_r);
    rec.step_norm = std::hypot(ds, dr);
    trace.iterations.push_back(rec);

    if (rec.true_ssr > trace.best_ssr) {
      trace.best_ssr = rec.true_ssr;
      trace.best = current;
    }
    if (std::abs(ds) < options.eps && std::abs(dr) < options.eps) {
      trace.converged = true;
      break;
    }
  }
  return trace;
}

OptimizerTrace sca_optimize(const DcCoefficients& coeffs, std::span<const Allocation> starts,
                            const ScaOptions& options) {
  OptimizerTrace best = sca_run(coeffs, kFpaptAllocation, options);
  for (const Allocation& s : starts) {
    OptimizerTrace t = sca_run(coeffs, s, options);
    if (t.best_ssr > best.best_ssr) best = std::move(t);
  }
  return best;
}

std::vector<Allocation> random_starts(std::uint64_t seed, std::uint64_t index, std::size_t count) {
  const CounterRng rng(derive_seed(seed, Stream::kOptimizerStarts));
  constexpr std::uint64_t kStride = 1u << 16;
  if (count > kStride / 2) throw ConfigError("random_starts: too many starts per realization");
  std::vector<Allocation> starts;
  starts.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    const std::uint64_t base = index * kStride + 2 * j;
    starts.push_back({kHalf * rng.uniform(base), kHalf * rng.uniform(base + 1)});
  }
  return starts;
}

GridResult grid_oracle(const DcCoefficients& coeffs, double step) {
  if (!(step > 0.0 && step <= 0.01)) {
    std::ostringstream os;
    os << "grid_oracle: step must lie in (0, 0.01] (got " << step << ")";
    throw ConfigError(os.str());
  }
  const auto points = static_cast<int>(std::floor(kHalf / step + 1e-9));
  GridResult best{{0.0, 0.0}, true_ssr(coeffs, 0.0, 0.0)};
  for (int i = 0; i <= points; ++i) {
    const double a_s = i * step;
    for (int j = 0; j <= points; ++j) {
      const double a_r = j * step;
      const double v = true_ssr(coeffs, a_s, a_r);
      if (v > best.ssr) best = {{a_s, a_r}, v};
    }
  }
  return best;
}

}  // namespace fdnoma
