#pragma once

#include "fdnoma/channel_sampler.hpp"
#include "fdnoma/system_model.hpp"

namespace fdnoma {

/// Instantaneous SINRs of one block. Naming: <receiver>_<symbol>, so
/// `d1_d2` is the SINR at D1 when it decodes D2's symbol (the SIC stage).
struct SinrSet {
  double relay_d1 = 0.0;  // relay decoding D1's symbol
  double relay_d2 = 0.0;  // relay decoding D2's symbol (first, with D1's as noise)
  double d1_d1 = 0.0;     // D1 own symbol after perfect SIC
  double d1_d2 = 0.0;     // D1 decoding D2's symbol
  double d2_d2 = 0.0;     // D2 own symbol, D1's treated as noise
  double eve_d1 = 0.0;    // MRC eavesdropper, D1's symbol after SIC
  double eve_d2 = 0.0;    // MRC eavesdropper, D2's symbol
  double eff_d1 = 0.0;    // min(relay_d1, d1_d1)
  double eff_d2 = 0.0;    // min(relay_d2, d2_d2, d1_d2)
};

/// Rates in bits/s/Hz.
struct RateSet {
  double r_d1 = 0.0;
  double r_d2 = 0.0;
  double re_d1 = 0.0;
  double re_d2 = 0.0;
  double s_d1 = 0.0;
  double s_d2 = 0.0;
  double s_sum = 0.0;
};

/// The eavesdropper SINR for D1's symbol is a_s rho g_se + a_r rho g_re,
/// without the additive 1 sometimes written for it: the additive form is
/// inconsistent with the hypoexponential law its ergodic capacity relies on.
SinrSet compute_sinrs(const SystemParams& params, const ChannelRealization& ch) noexcept;

RateSet instantaneous_rates(const SinrSet& sinrs) noexcept;

inline RateSet instantaneous_secrecy(const SystemParams& params, const ChannelRealization& ch) noexcept {
  return instantaneous_rates(compute_sinrs(params, ch));
}

}  // namespace fdnoma
