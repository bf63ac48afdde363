#include "fdnoma/channel_sampler.hpp"

#include <cmath>

#include "fdnoma/error.hpp"

namespace fdnoma {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kDrawsPerRealization = 8;  // 6 used, 2 spare

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed) noexcept : key_(mix64(seed ^ 0x6A09E667F3BCC909ULL)) {}

std::uint64_t CounterRng::bits(std::uint64_t counter) const noexcept {
  // Weyl sequence position `counter` of a SplitMix64 stream keyed by the seed,
  // followed by a second round so that neighbouring keys decorrelate.
  return mix64(mix64(key_ + (counter + 1) * kGolden) ^ key_);
}

double CounterRng::uniform(std::uint64_t counter) const noexcept {
  constexpr double kScale = 0x1.0p-53;
  return (static_cast<double>(bits(counter) >> 11) + 0.5) * kScale;
}

double CounterRng::exponential(std::uint64_t counter, double mean) const noexcept {
  return -mean * std::log(uniform(counter));
}

std::uint64_t derive_seed(std::uint64_t seed, Stream stream) noexcept {
  if (stream == Stream::kChannel) return seed;
  return mix64(seed + static_cast<std::uint64_t>(stream) * kGolden);
}

ChannelRealization sample_realization(const FadingProfile& profile, std::uint64_t seed,
                                      std::uint64_t index) noexcept {
  const CounterRng rng(seed);
  const std::uint64_t base = index * kDrawsPerRealization;
  ChannelRealization ch;
  ch.g_sr = rng.exponential(base + 0, profile.var_sr);
  ch.g_rd1 = rng.exponential(base + 1, profile.var_rd1);
  ch.g_rd2 = rng.exponential(base + 2, profile.var_rd2);
  ch.g_se = rng.exponential(base + 3, profile.var_se);
  ch.g_re = rng.exponential(base + 4, profile.var_re);
  ch.g_si = rng.exponential(base + 5, profile.var_si);
  return ch;
}

std::vector<ChannelRealization> sample_range(const FadingProfile& profile, std::uint64_t seed,
                                             std::uint64_t first, std::uint64_t count) {
  std::vector<ChannelRealization> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(sample_realization(profile, seed, first + i));
  return out;
}

std::vector<ChannelRealization> sample_batch(const FadingProfile& profile, std::uint64_t seed,
                                             std::uint64_t count) {
  if (count < 1) throw ConfigError("sample_batch: count must be at least 1");
  return sample_range(profile, seed, 0, count);
}

}  // namespace fdnoma
