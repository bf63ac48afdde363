#pragma once

#include <cstdint>
#include <span>

#include "fdnoma/channel_sampler.hpp"
#include "fdnoma/system_model.hpp"

namespace fdnoma {

struct McEstimate {
  double mean = 0.0;
  double std_err = 0.0;  // sample standard deviation / sqrt(n)
  std::uint64_t n = 0;
};

/// Welford accumulator; merge() is Chan's pairwise update.
class RunningStats {
 public:
  void push(double x) noexcept;
  void merge(const RunningStats& other) noexcept;

  std::uint64_t count() const noexcept { return n_; }
  double mean() const noexcept { return mean_; }
  double variance() const noexcept;
  McEstimate estimate() const noexcept;

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Sample means of log2(1 + .) of the four SINRs that enter the ergodic
/// secrecy capacity, plus the per-block differences used for standard
/// errors of the secrecy estimators.
struct ErgodicTerms {
  McEstimate c_d1;
  McEstimate c_d2;
  McEstimate ce_d1;
  McEstimate ce_d2;
  McEstimate diff_d1;       // log2(1+eff_d1) - log2(1+eve_d1)
  McEstimate diff_d2;       // log2(1+eff_d2) - log2(1+eve_d2)
  McEstimate diff_sum;      // diff_d1 + diff_d2
  McEstimate inst_secrecy;  // [diff_d1]^+ + [diff_d2]^+ per block
};

/// Realizations are processed in fixed-size chunks merged in index order,
/// so results do not depend on the worker count.
inline constexpr std::uint64_t kMcChunkSize = 1u << 14;
inline constexpr std::uint64_t kDefaultAnalysisRealizations = 1'000'000;
inline constexpr std::uint64_t kDefaultOptimizerRealizations = 10'000;

/// Over realizations [0, n) of sample_batch(params.profile, seed, n). n >= 2.
ErgodicTerms estimate_ergodic_terms(const SystemParams& params, std::uint64_t n, std::uint64_t seed,
                                    unsigned workers = 1);

/// Same estimator over an explicit set of realizations.
ErgodicTerms estimate_ergodic_terms(const SystemParams& params, std::span<const ChannelRealization> batch);

/// Expectation first, then clip per user: [C_d1 - Ce_d1]^+ + [C_d2 - Ce_d2]^+.
double secrecy_mode_a(const ErgodicTerms& terms) noexcept;

/// Standard error of secrecy_mode_a, from the per-block differences of the
/// users whose clipped term is active.
double secrecy_mode_a_std_err(const ErgodicTerms& terms) noexcept;

/// Mean of the per-block clipped secrecy sum rate.
McEstimate secrecy_mode_b(const SystemParams& params, std::uint64_t n, std::uint64_t seed,
                          unsigned workers = 1);

enum class McMode { kA, kB };

}  // namespace fdnoma
