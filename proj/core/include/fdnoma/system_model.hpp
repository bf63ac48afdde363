#pragma once

// Geometry, fading statistics and transmit configuration of the
// source -> FD relay -> {D1, D2} link observed by an MRC eavesdropper.
//
// All SNRs are linear and normalized to unit noise power. The residual
// self-interference level k_r only appears implicitly as rho_si / rho.

namespace fdnoma {

/// Pairwise distances in meters.
struct Topology {
  double d_sr = 10.0;
  double d_rd1 = 10.0;
  double d_rd2 = 15.0;
  double d_se = 40.0;
  double d_re = 30.0;
};

/// Variances of the Rayleigh links (sigma^2 = d^-nu) and of the relay
/// loop-back channel.
struct FadingProfile {
  double var_sr = 1.0;
  double var_rd1 = 1.0;
  double var_rd2 = 1.0;
  double var_se = 1.0;
  double var_re = 1.0;
  double var_si = 1.0;
};

struct SystemParams {
  double rho = 1.0;     // P / sigma_n^2
  double rho_si = 0.0;  // k_r P / sigma_n^2
  double nu = 3.0;
  double a_s = 0.2;  // source power fraction for D1's symbol
  double a_r = 0.2;  // relay power fraction for D1's symbol
  FadingProfile profile{};
};

inline constexpr double kMaxPowerAllocation = 0.5;
inline constexpr double kDefaultSelfInterferenceVariance = 1.0;

/// sigma^2_{i,j} = d_{i,j}^{-nu} for every link; var_si is passed through.
/// Throws ConfigError on a non-positive distance, nu or var_si.
FadingProfile variances_from_topology(const Topology& topology, double nu,
                                      double var_si = kDefaultSelfInterferenceVariance);

/// Returns `params` unchanged if every invariant holds, otherwise throws
/// ConfigError naming the offending field.
SystemParams validate_params(const SystemParams& params);

double db_to_linear(double db);
double linear_to_db(double linear);

/// Convenience: builds and validates SystemParams from dB quantities.
SystemParams make_params(double rho_db, double rho_si_db, double a_s, double a_r,
                         const Topology& topology, double nu = 3.0,
                         double var_si = kDefaultSelfInterferenceVariance);

}  // namespace fdnoma
