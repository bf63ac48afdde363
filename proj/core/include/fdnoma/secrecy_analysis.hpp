#pragma once

#include "fdnoma/numerics.hpp"
#include "fdnoma/system_model.hpp"

namespace fdnoma {

/// Exponential rates derived from a SystemParams. A zero power fraction
/// gives an infinite pi rate (that SNR is identically zero).
struct RateParams {
  double pi_sr = 0.0;   // 1 / (a_s rho var_sr)
  double pi_rd1 = 0.0;  // 1 / (a_r rho var_rd1)
  double pi_se = 0.0;   // 1 / (a_s rho var_se)
  double pi_re = 0.0;   // 1 / (a_r rho var_re)
  double lambda_sr = 0.0;
  double lambda_rd1 = 0.0;
  double lambda_rd2 = 0.0;
  double lambda_rr = 0.0;
  double lambda_se = 0.0;
  double lambda_re = 0.0;
  double s = 0.0;     // pi_sr + pi_rd1
  double beta = 0.0;  // rho_si pi_sr
  double c1 = 0.0;    // 1 / s
  double c2 = 0.0;    // beta / (lambda_rr s)
  double a_min = 0.0;
};

RateParams make_rate_params(const SystemParams& params);

/// Ergodic quantities in bits/s/Hz for one configuration.
struct AnalyticalReport {
  double c_d1 = 0.0;
  double c_d2 = 0.0;
  double ce_d1 = 0.0;
  double ce_d2_ub = 0.0;
  double sec_lb = 0.0;
};

/// Relative distance below which two exponential rates are treated as equal
/// and the limit / quadrature form replaces the partial-fraction closed form.
inline constexpr double kDegenerateRateThreshold = 1e-6;

/// P(eff_d1 <= x) = 1 - lambda_rr e^{-s x} / (beta x + lambda_rr).
double cdf_eff_d1(double x, const RateParams& rp);

/// P(eff_d2 <= x); equals 1 from x_max = min((1-a_s)/a_s, (1-a_r)/a_r) on.
double cdf_eff_d2(double x, const RateParams& rp, const SystemParams& params);

/// Upper end of the support of eff_d2 (infinite when both fractions are 0).
double eff_d2_support(const SystemParams& params);

/// E[log2(1 + eff_d1)]:
///   lambda_rr / ((lambda_rr - beta) ln 2) [e^s E1(s) - e^{z} E1(z)], z = lambda_rr s / beta,
/// with e^s E1(s) / ln 2 at beta = 0 and quadrature of the c.d.f. when beta ~ lambda_rr.
double ergodic_capacity_d1(const RateParams& rp, const numerics::QuadOptions& quad = {});

/// (1/ln 2) int_0^{x_max} (1 - F_eff_d2(x)) / (1 + x) dx.
double ergodic_capacity_d2(const RateParams& rp, const SystemParams& params,
                           const numerics::QuadOptions& quad = {});

/// E[log2(1 + eve_d1)] for the hypoexponential eavesdropper SNR with rates pi_se, pi_re.
double ergodic_eve_capacity_d1(const RateParams& rp, const numerics::QuadOptions& quad = {});

/// E[log2(1 + delta)], delta = (1-a) rho S / (a rho S + 1), S = g_se + g_re,
/// a = min(a_s, a_r). Upper-bounds E[log2(1 + eve_d2)] since eve_d2 <= delta.
double ergodic_eve_capacity_d2_ub(const RateParams& rp, const SystemParams& params,
                                  const numerics::QuadOptions& quad = {});

/// [c_d1 - ce_d1]^+ + [c_d2 - ce_d2_ub]^+
AnalyticalReport ergodic_secrecy_lower_bound(double c_d1, double c_d2, double ce_d1, double ce_d2_ub);

/// All of the above for one configuration.
AnalyticalReport analyze(const SystemParams& params, const numerics::QuadOptions& quad = {});

}  // namespace fdnoma
