#pragma once

#include <cstdint>
#include <vector>

#include "fdnoma/system_model.hpp"

namespace fdnoma {

/// Squared magnitudes |h|^2 of one fading block.
struct ChannelRealization {
  double g_sr = 0.0;
  double g_rd1 = 0.0;
  double g_rd2 = 0.0;
  double g_se = 0.0;
  double g_re = 0.0;
  double g_si = 0.0;

  bool operator==(const ChannelRealization&) const = default;
};

/// Stateless counter-based generator: the output depends only on
/// (seed, counter), so any index range can be drawn by any worker.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) noexcept;

  std::uint64_t bits(std::uint64_t counter) const noexcept;
  /// Uniform on the open interval (0, 1).
  double uniform(std::uint64_t counter) const noexcept;
  /// Exponential with the given mean (> 0 almost surely).
  double exponential(std::uint64_t counter, double mean) const noexcept;

 private:
  std::uint64_t key_;
};

/// Independent draw streams derived from a single user seed.
enum class Stream : std::uint64_t {
  kChannel = 0,
  kOptimizerStarts = 1,
};

std::uint64_t derive_seed(std::uint64_t seed, Stream stream) noexcept;

/// Block `index` of the Rayleigh channel process for `seed`. Each gain is
/// exponential with mean equal to the matching profile variance.
ChannelRealization sample_realization(const FadingProfile& profile, std::uint64_t seed,
                                      std::uint64_t index) noexcept;

/// Realizations [0, count) for `seed`.
std::vector<ChannelRealization> sample_batch(const FadingProfile& profile, std::uint64_t seed,
                                             std::uint64_t count);

/// Realizations [first, first + count); same values as the matching slice of sample_batch.
std::vector<ChannelRealization> sample_range(const FadingProfile& profile, std::uint64_t seed,
                                             std::uint64_t first, std::uint64_t count);

}  // namespace fdnoma
