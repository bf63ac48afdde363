#include <doctest.h>

#include <cmath>

#include "fdnoma/sinr_rates.hpp"

using namespace fdnoma;

namespace {

SystemParams worked_params() {
  SystemParams p;
  p.rho = 10.0;
  p.rho_si = 1.0;
  p.a_s = 0.2;
  p.a_r = 0.25;
  return p;
}

ChannelRealization worked_channel() { return {1.0, 0.5, 0.2, 0.1, 0.1, 1.0}; }

}  // namespace

TEST_SUITE("sinr_rates") {

TEST_CASE("worked example") {
  const SinrSet s = compute_sinrs(worked_params(), worked_channel());
  CHECK(s.relay_d1 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.relay_d2 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s.d1_d1 == doctest::Approx(1.25).epsilon(1e-14));
  CHECK(s.d1_d2 == doctest::Approx(5.0 / 3.0).epsilon(1e-14));
  CHECK(s.d2_d2 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.eve_d1 == doctest::Approx(0.45).epsilon(1e-14));
  CHECK(s.eve_d2 == doctest::Approx(1.55 / 1.45).epsilon(1e-14));
  CHECK(s.eff_d1 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.eff_d2 == doctest::Approx(1.0).epsilon(1e-14));

  const RateSet r = instantaneous_rates(s);
  CHECK(r.r_d1 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.r_d2 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.re_d1 == doctest::Approx(std::log2(1.45)).epsilon(1e-14));
  CHECK(r.re_d1 == doctest::Approx(0.5361).epsilon(1e-4));
  CHECK(r.re_d2 == doctest::Approx(1.0489).epsilon(1e-4));
  CHECK(r.s_d1 == doctest::Approx(0.4639).epsilon(1e-4));
  CHECK(r.s_d2 == 0.0);
  CHECK(r.s_sum == doctest::Approx(r.s_d1));
  CHECK(instantaneous_secrecy(worked_params(), worked_channel()).s_sum == doctest::Approx(r.s_sum));
}

TEST_CASE("zero allocation or dead links") {
  SystemParams p = worked_params();
  p.a_s = 0.0;
  const SinrSet s = compute_sinrs(p, worked_channel());
  CHECK(s.relay_d1 == 0.0);
  CHECK(s.eff_d1 == 0.0);

  ChannelRealization ch = worked_channel();
  ch.g_sr = 0.0;
  ch.g_si = 0.0;
  const SinrSet d = compute_sinrs(worked_params(), ch);
  CHECK(d.relay_d1 == 0.0);
  CHECK(d.relay_d2 == 0.0);
  CHECK(d.eff_d2 == 0.0);
}

TEST_CASE("rates of all-zero SINRs and clipping") {
  const RateSet z = instantaneous_rates(SinrSet{});
  CHECK(z.r_d1 == 0.0);
  CHECK(z.r_d2 == 0.0);
  CHECK(z.re_d1 == 0.0);
  CHECK(z.re_d2 == 0.0);
  CHECK(z.s_sum == 0.0);

  SinrSet s;
  s.eff_d1 = 1.0;
  s.eve_d1 = 3.0;
  CHECK(instantaneous_rates(s).s_d1 == 0.0);
}

}
