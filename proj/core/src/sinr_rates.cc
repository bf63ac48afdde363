#include "fdnoma/sinr_rates.hpp"

#include <algorithm>
#include <cmath>

namespace fdnoma {

SinrSet compute_sinrs(const SystemParams& params, const ChannelRealization& ch) noexcept {
  const double rho = params.rho;
  const double a_s = params.a_s;
  const double a_r = params.a_r;

  const double sr = rho * ch.g_sr;
  const double rd1 = rho * ch.g_rd1;
  const double rd2 = rho * ch.g_rd2;
  const double se = rho * ch.g_se;
  const double re = rho * ch.g_re;
  const double relay_noise = params.rho_si * ch.g_si + 1.0;

  SinrSet s;
  s.relay_d2 = (1.0 - a_s) * sr / (a_s * sr + relay_noise);
  s.relay_d1 = a_s * sr / relay_noise;
  s.d1_d2 = (1.0 - a_r) * rd1 / (a_r * rd1 + 1.0);
  s.d1_d1 = a_r * rd1;
  s.d2_d2 = (1.0 - a_r) * rd2 / (a_r * rd2 + 1.0);
  s.eve_d2 = ((1.0 - a_s) * se + (1.0 - a_r) * re) / (a_s * se + a_r * re + 1.0);
  s.eve_d1 = a_s * se + a_r * re;
  s.eff_d1 = std::min(s.relay_d1, s.d1_d1);
  s.eff_d2 = std::min({s.relay_d2, s.d2_d2, s.d1_d2});
  return s;
}

RateSet instantaneous_rates(const SinrSet& sinrs) noexcept {
  RateSet r;
  r.r_d1 = std::log2(1.0 + sinrs.eff_d1);
  r.r_d2 = std::log2(1.0 + sinrs.eff_d2);
  r.re_d1 = std::log2(1.0 + sinrs.eve_d1);
  r.re_d2 = std::log2(1.0 + sinrs.eve_d2);
  r.s_d1 = std::max(0.0, r.r_d1 - r.re_d1);
  r.s_d2 = std::max(0.0, r.r_d2 - r.re_d2);
  r.s_sum = r.s_d1 + r.s_d2;
  return r;
}

}  // namespace fdnoma
