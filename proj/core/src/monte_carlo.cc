#include "fdnoma/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fdnoma/error.hpp"
#include "fdnoma/parallel.hpp"
#include "fdnoma/sinr_rates.hpp"

namespace fdnoma {

void RunningStats::push(double x) noexcept {
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
}

void RunningStats::merge(const RunningStats& other) noexcept {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(other.n_);
  const double n = na + nb;
  const double delta = other.mean_ - mean_;
  mean_ += delta * nb / n;
  m2_ += other.m2_ + delta * delta * na * nb / n;
  n_ += other.n_;
}

double RunningStats::variance() const noexcept {
  return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
}

McEstimate RunningStats::estimate() const noexcept {
  McEstimate e;
  e.mean = mean_;
  e.n = n_;
  e.std_err = n_ > 0 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
  return e;
}

namespace {

struct TermAccumulator {
  RunningStats c_d1, c_d2, ce_d1, ce_d2, diff_d1, diff_d2, diff_sum, inst;

  void push(const RateSet& r) noexcept {
    c_d1.push(r.r_d1);
    c_d2.push(r.r_d2);
    ce_d1.push(r.re_d1);
    ce_d2.push(r.re_d2);
    const double d1 = r.r_d1 - r.re_d1;
    const double d2 = r.r_d2 - r.re_d2;
    diff_d1.push(d1);
    diff_d2.push(d2);
    diff_sum.push(d1 + d2);
    inst.push(r.s_sum);
  }

  void merge(const TermAccumulator& o) noexcept {
    c_d1.merge(o.c_d1);
    c_d2.merge(o.c_d2);
    ce_d1.merge(o.ce_d1);
    ce_d2.merge(o.ce_d2);
    diff_d1.merge(o.diff_d1);
    diff_d2.merge(o.diff_d2);
    diff_sum.merge(o.diff_sum);
    inst.merge(o.inst);
  }

  ErgodicTerms finish() const noexcept {
    return {c_d1.estimate(), c_d2.estimate(), ce_d1.estimate(), ce_d2.estimate(),
            diff_d1.estimate(), diff_d2.estimate(), diff_sum.estimate(), inst.estimate()};
  }
};

void require_samples(std::uint64_t n) {
  if (n < 2) throw ConfigError("Monte Carlo estimation needs at least 2 realizations");
}

// Fixed chunk boundaries and an in-order merge: the floating-point result
// depends only on the realizations, not on who computed which chunk.
template <class Block>
TermAccumulator accumulate_chunks(const SystemParams& params, std::uint64_t n, unsigned workers, Block block) {
  require_samples(n);
  const std::uint64_t chunks = (n + kMcChunkSize - 1) / kMcChunkSize;
  std::vector<TermAccumulator> partial(chunks);
  parallel_for(chunks, workers, [&](std::size_t c) {
    const std::uint64_t first = c * kMcChunkSize;
    const std::uint64_t last = std::min(n, first + kMcChunkSize);
    TermAccumulator& acc = partial[c];
    for (std::uint64_t i = first; i < last; ++i) acc.push(instantaneous_secrecy(params, block(i)));
  });
  TermAccumulator total;
  for (const auto& p : partial) total.merge(p);
  return total;
}

TermAccumulator accumulate(const SystemParams& params, std::uint64_t n, std::uint64_t seed,
                           unsigned workers) {
  return accumulate_chunks(params, n, workers,
                           [&](std::uint64_t i) { return sample_realization(params.profile, seed, i); });
}

}  // namespace

ErgodicTerms estimate_ergodic_terms(const SystemParams& params, std::uint64_t n, std::uint64_t seed,
                                    unsigned workers) {
  return accumulate(params, n, seed, workers).finish();
}

ErgodicTerms estimate_ergodic_terms(const SystemParams& params, std::span<const ChannelRealization> batch) {
  return accumulate_chunks(params, batch.size(), 1, [&](std::uint64_t i) { return batch[i]; }).finish();
}

double secrecy_mode_a(const ErgodicTerms& terms) noexcept {
  return std::max(0.0, terms.c_d1.mean - terms.ce_d1.mean) + std::max(0.0, terms.c_d2.mean - terms.ce_d2.mean);
}

double secrecy_mode_a_std_err(const ErgodicTerms& terms) noexcept {
  const bool d1_active = terms.diff_d1.mean > 0.0;
  const bool d2_active = terms.diff_d2.mean > 0.0;
  if (d1_active && d2_active) return terms.diff_sum.std_err;
  if (d1_active) return terms.diff_d1.std_err;
  if (d2_active) return terms.diff_d2.std_err;
  return 0.0;
}

McEstimate secrecy_mode_b(const SystemParams& params, std::uint64_t n, std::uint64_t seed, unsigned workers) {
  return accumulate(params, n, seed, workers).inst.estimate();
}

}  // namespace fdnoma
