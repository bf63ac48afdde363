#pragma once

// Secrecy-sum-rate maximization over the power split (a_s, a_r) for one
// block with known CSI, by successive convex approximation of the
// difference-of-concave rate constraints.
//
// In the coefficient basis below every per-branch secrecy rate difference
// is  concave(a) - concave(a). The subtracted concave pieces are
//   g_E  = log2(1 + a_s C + a_r D)          (both D1 branches)
//   g_SR = log2(a_s A + B)                  (D2, relay stage)
//   g_2  = log2(a_r E2 + 1)                 (D2, own decode)
//   g_1  = log2(a_r E1 + 1)                 (D2, SIC stage at D1)
// and replacing them by their tangents yields a concave minorant that is
// tight at the anchor.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "fdnoma/channel_sampler.hpp"

namespace fdnoma {

struct DcCoefficients {
  double A = 0.0;    // rho g_sr
  double B = 1.0;    // rho_si g_si + 1
  double E1v = 0.0;  // rho g_rd1
  double E2v = 0.0;  // rho g_rd2
  double C = 0.0;    // rho g_se
  double D = 0.0;    // rho g_re
};

struct Allocation {
  double a_s = 0.0;
  double a_r = 0.0;
  bool operator==(const Allocation&) const = default;
};

inline constexpr Allocation kFpaptAllocation{0.2, 0.2};

DcCoefficients dc_coefficients(double rho, double rho_si, const ChannelRealization& ch) noexcept;

/// Branch order of rate_differences() and SurrogateModel::rhs().
enum Branch : std::size_t { kD1Relay = 0, kD1Own, kD2Relay, kD2Own, kD2Sic, kBranchCount };

/// Secrecy rate differences (bits/s/Hz) of the five decoding branches.
std::array<double, kBranchCount> rate_differences(const DcCoefficients& k, Allocation a) noexcept;

/// [min(D1 branches)]^+ + [min(D2 branches)]^+
double true_ssr(const DcCoefficients& k, double a_s, double a_r) noexcept;

/// First-order expansion of log2 of an affine function at an anchor.
struct Tangent {
  Allocation anchor;
  double value = 0.0;
  double d_as = 0.0;
  double d_ar = 0.0;

  double at(Allocation a) const noexcept {
    return value + d_as * (a.a_s - anchor.a_s) + d_ar * (a.a_r - anchor.a_r);
  }
};

/// log2(u0 + us a_s + ur a_r) linearized at `anchor`.
Tangent log2_affine_tangent(double u0, double us, double ur, Allocation anchor) noexcept;

struct SurrogateModel {
  DcCoefficients coeffs;
  Allocation anchor;
  Tangent eve;       // g_E
  Tangent relay_d2;  // g_SR
  Tangent own_d2;    // g_2
  Tangent sic_d2;    // g_1
  double kappa_relay = 0.0;  // log2(A+B) - log2(C+D+1)
  double kappa_own = 0.0;    // log2(E2+1) - log2(C+D+1)
  double kappa_sic = 0.0;    // log2(E1+1) - log2(C+D+1)

  std::array<double, kBranchCount> rhs(Allocation a) const noexcept;
  double user_d1(Allocation a) const noexcept;  // min of the D1 right-hand sides
  double user_d2(Allocation a) const noexcept;
  double objective(Allocation a) const noexcept;            // clipped t1 + t2
  double unclipped_objective(Allocation a) const noexcept;  // user_d1 + user_d2
};

SurrogateModel build_surrogate(const DcCoefficients& coeffs, Allocation anchor) noexcept;

struct SubproblemSolution {
  Allocation a;
  double t1 = 0.0;
  double t2 = 0.0;
  double objective() const noexcept { return t1 + t2; }
};

/// Maximizes the clipped surrogate over [0, 1/2]^2. Since
/// [x]^+ + [y]^+ = max(0, x, y, x + y), the optimum is the best of three
/// concave maximizations (user_d1, user_d2 and their sum), each solved by
/// nested golden-section search. The anchor is kept unless another point
/// is strictly better, so the objective never drops below its anchor value.
SubproblemSolution solve_subproblem(const SurrogateModel& model);

struct ScaOptions {
  double eps = 1e-4;
  int max_iter = 50;
};

struct IterationRecord {
  int iteration = 0;
  Allocation a;
  double surrogate_objective = 0.0;
  double surrogate_unclipped = 0.0;
  double true_ssr = 0.0;
  double step_norm = 0.0;
};

struct OptimizerTrace {
  Allocation start;
  std::vector<IterationRecord> iterations;  // iteration 0 is the start point
  Allocation best;
  double best_ssr = 0.0;
  bool converged = false;
};

/// One SCA run from `start` until both allocation steps fall below eps or
/// max_iter iterations have been made.
OptimizerTrace sca_run(const DcCoefficients& coeffs, Allocation start, const ScaOptions& options = {});

/// Runs sca_run from every start plus the FPAPT point (0.2, 0.2) and
/// returns the trace that reached the highest secrecy sum rate.
OptimizerTrace sca_optimize(const DcCoefficients& coeffs, std::span<const Allocation> starts,
                            const ScaOptions& options = {});

/// `count` uniform starting points on [0, 1/2]^2 for realization `index`.
std::vector<Allocation> random_starts(std::uint64_t seed, std::uint64_t index, std::size_t count);

inline constexpr std::size_t kDefaultRandomStarts = 4;

struct GridResult {
  Allocation a;
  double ssr = 0.0;
};

/// Brute-force argmax of true_ssr over {0, step, 2 step, ...}^2 within [0, 1/2]^2.
GridResult grid_oracle(const DcCoefficients& coeffs, double step);

/// Fixed power allocation a_s = a_r = 0.2.
inline double fpapt_baseline(const DcCoefficients& coeffs) noexcept {
  return true_ssr(coeffs, kFpaptAllocation.a_s, kFpaptAllocation.a_r);
}

}  // namespace fdnoma
