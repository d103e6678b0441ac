#include <doctest.h>

#include <cmath>
#include <random>

#include "judrs/channel.hpp"
#include "judrs/link_budget.hpp"
#include "judrs/system_params.hpp"

using namespace judrs;

namespace {
// frozen high-precision evaluations at the default parameters
constexpr double kBer100M16 = 9.0799859524969703071e-6;     // 0.2*exp(-10)
constexpr double kSnr1em4M64 = 319.23790330076745918;       // -63*ln(5e-4)/1.5
constexpr double kUncoded1em4M64At250m = 0.016056148917292320313;
constexpr double kCoded6At250m = 0.029419174284662662534;
constexpr double kF6 = 9.1259105650076852389e-13;
constexpr double kF3 = 3.8624241345517973603e-14;

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }
} // namespace

TEST_SUITE("link_budget") {

TEST_CASE("constellation size follows the hop rate") {
  const SystemParams p = SystemParams::defaults();
  CHECK(constellation_size(6.0, p) == doctest::Approx(512.0).epsilon(1e-12));
  CHECK(constellation_size(1e-6, p) > 1.0);
  CHECK_THROWS_AS(constellation_size(0.0, p), std::domain_error);
}

TEST_CASE("ber_mqam boundary and forced-exponent values") {
  CHECK(ber_mqam(0.0, 4.0) == 0.2);
  for (double m : {4.0, 16.0, 64.0}) {
    const double gamma = 2.0 * (m - 1.0) / 1.5;
    CHECK(rel_err(ber_mqam(gamma, m), 0.2 * std::exp(-2.0)) < 1e-14);
  }
  CHECK(rel_err(ber_mqam(100.0, 16.0), kBer100M16) < 1e-12);
  CHECK_THROWS_AS(ber_mqam(10.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(ber_mqam(-1.0, 4.0), std::domain_error);
}

TEST_CASE("required_snr inverts ber_mqam") {
  CHECK(required_snr(0.2, 16.0) == 0.0);
  CHECK(rel_err(ber_mqam(required_snr(1e-4, 16.0), 16.0), 1e-4) < 1e-12);
  CHECK(rel_err(required_snr(1e-4, 64.0), kSnr1em4M64) < 1e-12);
  CHECK_THROWS_AS(required_snr(0.25, 16.0), std::domain_error);
  CHECK_THROWS_AS(required_snr(0.0, 16.0), std::domain_error);
}

TEST_CASE("ber/snr round trip holds across the BER and constellation ranges") {
  for (double pe : {1e-8, 1e-6, 1e-4, 1e-2, 0.1, 0.2})
    for (double m : {4.0, 16.0, 64.0, 256.0}) {
      CHECK(rel_err(ber_mqam(required_snr(pe, m), m), pe) < 1e-12);
    }
}

TEST_CASE("required power is the required SNR scaled by noise over gain") {
  const SystemParams p = SystemParams::defaults();
  CHECK(required_power_uncoded(0.2, 16.0, 1e-12, p) == 0.0);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const double pe = std::pow(10.0, -8.0 + 7.0 * u(rng));  // up to 0.1
    const double m = 2.0 + 300.0 * u(rng);
    const double h = std::pow(10.0, -14.0 + 4.0 * u(rng));
    const double via_snr = required_snr(pe, m) * p.noise_n0_w_per_hz * p.bandwidth_hz / h;
    CHECK(rel_err(required_power_uncoded(pe, m, h, p), via_snr) < 1e-12);
  }
  CHECK(rel_err(required_power_uncoded(1e-4, 64.0, pathloss_gain(250.0, p), p),
                kUncoded1em4M64At250m) < 1e-12);
  CHECK_THROWS_AS(required_power_uncoded(1e-4, 64.0, 0.0, p), std::domain_error);
}

TEST_CASE("coded power scales the uncoded power by eta_c over G_c") {
  const SystemParams p = SystemParams::defaults();
  CHECK(coded_power(3.0, 0.2, 1e-12, p) == 0.0);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const double pe = std::pow(10.0, -8.0 + 7.0 * u(rng));
    const double rate = 0.2 + 8.0 * u(rng);
    const double h = std::pow(10.0, -14.0 + 4.0 * u(rng));
    const double m = constellation_size(rate, p);
    const double expected =
        required_power_uncoded(pe, m, h, p) * p.code_rate / p.coding_gain;
    CHECK(rel_err(coded_power(rate, pe, h, p), expected) < 1e-12);
  }
  CHECK(rel_err(coded_power(6.0, 1e-4, pathloss_gain(250.0, p), p), kCoded6At250m) <
        1e-12);
}

TEST_CASE("two-hop BER composition and the per-hop split") {
  CHECK(df_end_to_end_ber(0.0, 0.0) == 0.0);
  CHECK(df_end_to_end_ber(1e-4, 0.0) == 1e-4);
  CHECK(df_end_to_end_ber(0.1, 0.0) == 0.1);
  CHECK(per_hop_ber_target(0.0) == 0.0);
  CHECK(per_hop_ber_target(1.0) == 1.0);
  for (double pe : {1e-8, 1e-4, 1e-2, 0.3}) {
    const double t = per_hop_ber_target(pe);
    CHECK(std::abs(df_end_to_end_ber(t, t) - pe) < 1e-12);
  }
  CHECK_THROWS_AS(df_end_to_end_ber(-0.1, 0.0), std::domain_error);
}

TEST_CASE("rate factor equals the coded power at the per-hop BER target") {
  const SystemParams p = SystemParams::defaults();
  const double hop_target = per_hop_ber_target(p.target_ber);
  for (double rate : {3.0, 6.0})
    CHECK(rel_err(rate_factor_f(rate, p), coded_power(rate, hop_target, 1.0, p)) <
          1e-12);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.1, 12.0);
  for (int i = 0; i < 50; ++i) {
    const double rate = u(rng);
    CHECK(rel_err(rate_factor_f(rate, p), coded_power(rate, hop_target, 1.0, p)) <
          1e-12);
  }
}

TEST_CASE("rate factor frozen values and monotonicity") {
  const SystemParams p = SystemParams::defaults();
  CHECK(rel_err(rate_factor_f(6.0, p), kF6) < 1e-12);
  CHECK(rel_err(rate_factor_f(3.0, p), kF3) < 1e-12);
  for (double rate : {0.5, 3.0, 6.0})
    CHECK(rate_factor_f(2.0 * rate, p) > rate_factor_f(rate, p));
}

} // TEST_SUITE
