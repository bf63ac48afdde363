#include "fdnoma/secrecy_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace fdnoma {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2 = std::numbers::ln2;
// Floor for the 1 - a - a x factors near the end of the support.
constexpr double kDenominatorFloor = 1e-12;

double exponential_rate(double fraction, double rho, double variance) {
  return fraction > 0.0 ? 1.0 / (fraction * rho * variance) : kInf;
}

bool nearly_equal(double a, double b) {
  return std::abs(a - b) < kDegenerateRateThreshold * std::max(std::abs(a), std::abs(b));
}

// E[ln(1 + X)] for X ~ Exp(rate).
double log_mean_exponential(double rate) {
  if (std::isinf(rate)) return 0.0;
  return numerics::scaled_exp_integral_e1(rate);
}

// E[ln(1 + X)] for X = Exp(rate_a) + Exp(rate_b) (independent).
double log_mean_hypoexponential(double rate_a, double rate_b, const numerics::QuadOptions& quad) {
  if (std::isinf(rate_a)) return log_mean_exponential(rate_b);
  if (std::isinf(rate_b)) return log_mean_exponential(rate_a);
  if (nearly_equal(rate_a, rate_b)) {
    // Gamma(2, rate) expectation.
    const double rate = 0.5 * (rate_a + rate_b);
    return numerics::quad_semi_infinite(
        [rate](double x) { return rate * rate * x * std::exp(-rate * x) * std::log1p(x); }, quad);
  }
  return (rate_b * numerics::scaled_exp_integral_e1(rate_a) -
          rate_a * numerics::scaled_exp_integral_e1(rate_b)) /
         (rate_b - rate_a);
}

double clamped(double v) { return std::max(v, kDenominatorFloor); }

double support_end(double fraction) { return fraction > 0.0 ? (1.0 - fraction) / fraction : kInf; }

// int over [0, upper) of g(x) dx, upper possibly infinite.
double integrate_support(const numerics::Integrand& g, double upper, const numerics::QuadOptions& quad) {
  if (std::isinf(upper)) return numerics::quad_semi_infinite(g, quad);
  return numerics::quad_finite(g, 0.0, upper, quad);
}

}  // namespace

RateParams make_rate_params(const SystemParams& params) {
  const FadingProfile& p = params.profile;
  RateParams rp;
  rp.pi_sr = exponential_rate(params.a_s, params.rho, p.var_sr);
  rp.pi_rd1 = exponential_rate(params.a_r, params.rho, p.var_rd1);
  rp.pi_se = exponential_rate(params.a_s, params.rho, p.var_se);
  rp.pi_re = exponential_rate(params.a_r, params.rho, p.var_re);
  rp.lambda_sr = 1.0 / p.var_sr;
  rp.lambda_rd1 = 1.0 / p.var_rd1;
  rp.lambda_rd2 = 1.0 / p.var_rd2;
  rp.lambda_rr = 1.0 / p.var_si;
  rp.lambda_se = 1.0 / p.var_se;
  rp.lambda_re = 1.0 / p.var_re;
  rp.s = rp.pi_sr + rp.pi_rd1;
  rp.beta = params.rho_si > 0.0 ? params.rho_si * rp.pi_sr : 0.0;
  rp.c1 = 1.0 / rp.s;
  rp.c2 = rp.beta / (rp.lambda_rr * rp.s);
  rp.a_min = std::min(params.a_s, params.a_r);
  return rp;
}

double cdf_eff_d1(double x, const RateParams& rp) {
  if (x <= 0.0) return 0.0;
  if (std::isinf(rp.s)) return 1.0;
  return 1.0 - rp.lambda_rr * std::exp(-rp.s * x) / (rp.beta * x + rp.lambda_rr);
}

double eff_d2_support(const SystemParams& params) {
  return std::min(support_end(params.a_s), support_end(params.a_r));
}

namespace {

// P(eff_d2 > x) for x inside the support.
double survival_eff_d2(double x, const RateParams& rp, const SystemParams& params) {
  const double src = clamped(1.0 - params.a_s - params.a_s * x) * params.rho;
  const double rel = clamped(1.0 - params.a_r - params.a_r * x) * params.rho;
  const double relay_decode = std::exp(-rp.lambda_sr * x / src);
  const double destinations = std::exp(-(rp.lambda_rd1 + rp.lambda_rd2) * x / rel);
  const double self_interference = 1.0 / (1.0 + rp.lambda_sr * params.rho_si * x / (rp.lambda_rr * src));
  return relay_decode * destinations * self_interference;
}

}  // namespace

double cdf_eff_d2(double x, const RateParams& rp, const SystemParams& params) {
  if (x <= 0.0) return 0.0;
  if (x >= eff_d2_support(params)) return 1.0;
  return 1.0 - survival_eff_d2(x, rp, params);
}

double ergodic_capacity_d1(const RateParams& rp, const numerics::QuadOptions& quad) {
  if (std::isinf(rp.s)) return 0.0;
  if (rp.beta == 0.0) return numerics::scaled_exp_integral_e1(rp.s) / kLn2;
  if (nearly_equal(rp.lambda_rr, rp.beta)) {
    const double integral = numerics::quad_semi_infinite(
        [&rp](double x) { return (1.0 - cdf_eff_d1(x, rp)) / (1.0 + x); }, quad);
    return integral / kLn2;
  }
  const double z = rp.lambda_rr * rp.s / rp.beta;
  return rp.lambda_rr / ((rp.lambda_rr - rp.beta) * kLn2) *
         (numerics::scaled_exp_integral_e1(rp.s) - numerics::scaled_exp_integral_e1(z));
}

double ergodic_capacity_d2(const RateParams& rp, const SystemParams& params,
                           const numerics::QuadOptions& quad) {
  const double upper = eff_d2_support(params);
  if (upper <= 0.0) return 0.0;
  auto integrand = [&](double x) { return survival_eff_d2(x, rp, params) / (1.0 + x); };
  return integrate_support(integrand, upper, quad) / kLn2;
}

double ergodic_eve_capacity_d1(const RateParams& rp, const numerics::QuadOptions& quad) {
  return log_mean_hypoexponential(rp.pi_se, rp.pi_re, quad) / kLn2;
}

double ergodic_eve_capacity_d2_ub(const RateParams& rp, const SystemParams& params,
                                  const numerics::QuadOptions& quad) {
  const double a = rp.a_min;
  const double ls = rp.lambda_se;
  const double lr = rp.lambda_re;
  if (a == 0.0) {
    // delta = rho S: hypoexponential SNR with rates lambda / rho.
    return log_mean_hypoexponential(ls / params.rho, lr / params.rho, quad) / kLn2;
  }
  const bool degenerate = nearly_equal(ls, lr);
  auto survival_sum = [=](double w) {
    if (degenerate) {
      const double l = 0.5 * (ls + lr);
      return (1.0 + l * w) * std::exp(-l * w);
    }
    return (lr * std::exp(-ls * w) - ls * std::exp(-lr * w)) / (lr - ls);
  };
  const double rho = params.rho;
  auto integrand = [=](double x) {
    const double w = x / (clamped(1.0 - a - a * x) * rho);
    return survival_sum(w) / (1.0 + x);
  };
  return numerics::quad_finite(integrand, 0.0, (1.0 - a) / a, quad) / kLn2;
}

AnalyticalReport ergodic_secrecy_lower_bound(double c_d1, double c_d2, double ce_d1, double ce_d2_ub) {
  AnalyticalReport r;
  r.c_d1 = c_d1;
  r.c_d2 = c_d2;
  r.ce_d1 = ce_d1;
  r.ce_d2_ub = ce_d2_ub;
  r.sec_lb = std::max(0.0, c_d1 - ce_d1) + std::max(0.0, c_d2 - ce_d2_ub);
  return r;
}

AnalyticalReport analyze(const SystemParams& params, const numerics::QuadOptions& quad) {
  const RateParams rp = make_rate_params(params);
  return ergodic_secrecy_lower_bound(ergodic_capacity_d1(rp, quad), ergodic_capacity_d2(rp, params, quad),
                                     ergodic_eve_capacity_d1(rp, quad),
                                     ergodic_eve_capacity_d2_ub(rp, params, quad));
}

}  // namespace fdnoma
