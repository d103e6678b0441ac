#include <doctest.h>

#include <cmath>
#include <random>

#include "judrs/channel.hpp"
#include "judrs/energy_model.hpp"
#include "judrs/link_budget.hpp"

using namespace judrs;

namespace {
// frozen high-precision evaluations, default parameters
constexpr double kCoopMid500 = 1.8128086392999528076e-7;    // D=500, R=3, zeta=0.5
constexpr double kDirect500 = 1.0821195354046784553e-7;
constexpr double kPMsMid500 = 0.032101892858070708844;
constexpr double kPRuMid500 = 0.029732386615359548804;
constexpr double kPRdMid500 = 0.029732386615359548804;
constexpr double kGainMid500 = -0.67523880679413088603;     // negative: circuit-bound
constexpr double kGain880At2000R1 = 0.29215745879974718855; // zeta=0.5

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

// expanded per-terminal form of the cooperative energy, unclamped
double expanded_coop(double h1, double h2, double hd, double zeta, double rate,
                     const SystemParams& p) {
  const double f = rate_factor_f(2.0 * rate, p);
  const double two_rb = 2.0 * rate * p.bandwidth_hz;
  return zeta / two_rb * (f / h1 + f * (1.0 - hd / h1) / h2 + 2.0 * p.p_c_w) +
         (1.0 - zeta) / two_rb * (f * (1.0 - hd / h2) / h1 + p.p_c_w);
}

struct RandomGains {
  double h1, h2, hd, zeta, rate;
};

RandomGains draw(std::mt19937_64& rng, bool clamp_free) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RandomGains g;
  g.h1 = std::pow(10.0, -13.0 + 3.0 * u(rng));
  g.h2 = std::pow(10.0, -13.0 + 3.0 * u(rng));
  const double cap = clamp_free ? std::min(g.h1, g.h2) : 1e-10;
  g.hd = cap * u(rng);
  g.zeta = u(rng);
  g.rate = 0.5 + 6.0 * u(rng);
  return g;
}
} // namespace

TEST_SUITE("energy_model") {

TEST_CASE("collapsed and expanded cooperative energy agree") {
  const SystemParams p = SystemParams::defaults();
  std::mt19937_64 rng(101);
  for (int i = 0; i < 100; ++i) {
    const RandomGains g = draw(rng, /*clamp_free=*/false);
    const double collapsed = coop_energy_per_bit(g.h1, g.h2, g.hd, g.zeta, g.rate, p);
    const double expanded = expanded_coop(g.h1, g.h2, g.hd, g.zeta, g.rate, p);
    CHECK(rel_err(collapsed, expanded) < 1e-12);
  }
}

TEST_CASE("no-direct-link, all-uplink limit") {
  const SystemParams p = SystemParams::defaults();
  const double h1 = 3e-11, h2 = 7e-12, rate = 3.0;
  const double f = rate_factor_f(2.0 * rate, p);
  const double two_rb = 2.0 * rate * p.bandwidth_hz;
  const double expected = f / two_rb * (1.0 / h1 + 1.0 / h2) + 2.0 * p.p_c_w / two_rb;
  CHECK(rel_err(coop_energy_per_bit(h1, h2, 0.0, 1.0, rate, p), expected) < 1e-13);
}

TEST_CASE("cooperative energy matches the frozen midpoint value") {
  const SystemParams p = SystemParams::defaults();
  const double h = pathloss_gain(250.0, p);
  const double hd = pathloss_gain(500.0, p);
  CHECK(rel_err(coop_energy_per_bit(h, h, hd, 0.5, 3.0, p), kCoopMid500) < 1e-12);
  // no clamping triggers at the midpoint, so the physical value coincides
  CHECK(rel_err(coop_energy_per_bit_physical(h, h, hd, 0.5, 3.0, p), kCoopMid500) <
        1e-12);
}

TEST_CASE("direct energy: composition identity, zero-uplink limit, frozen value") {
  const SystemParams p = SystemParams::defaults();
  CHECK(direct_energy_per_bit(1e-12, 0.0, 3.0, p) == 0.0);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double hd = std::pow(10.0, -13.0 + 3.0 * u(rng));
    const double zeta = u(rng);
    const double rate = 0.5 + 6.0 * u(rng);
    const double composed =
        zeta * (coded_power(rate, p.target_ber, hd, p) + p.p_c_w) /
        (rate * p.bandwidth_hz);
    CHECK(rel_err(direct_energy_per_bit(hd, zeta, rate, p) + 1e-300, composed + 1e-300) <
          1e-12);
  }
  CHECK(rel_err(direct_energy_per_bit(pathloss_gain(500.0, p), 0.5, 3.0, p),
                kDirect500) < 1e-12);
}

TEST_CASE("relay link powers: limits, clamping, frozen triple") {
  const SystemParams p = SystemParams::defaults();
  const double h = pathloss_gain(250.0, p);
  const double hd = pathloss_gain(500.0, p);

  // direct link as strong as the first hop: relay uplink power vanishes
  const LinkPowers eq = relay_link_powers(h, 5e-12, h, 3.0, p);
  CHECK(eq.p_relay_uplink_w == 0.0);

  // no direct link: both relay powers fall back to the plain hop powers
  const double f = rate_factor_f(6.0, p);
  const LinkPowers nod = relay_link_powers(h, 2.0 * h, 0.0, 3.0, p);
  CHECK(rel_err(nod.p_relay_uplink_w, f / (2.0 * h)) < 1e-13);
  CHECK(rel_err(nod.p_relay_downlink_w, f / h) < 1e-13);

  const LinkPowers mid = relay_link_powers(h, h, hd, 3.0, p);
  CHECK(rel_err(mid.p_ms_uplink_w, kPMsMid500) < 1e-12);
  CHECK(rel_err(mid.p_relay_uplink_w, kPRuMid500) < 1e-12);
  CHECK(rel_err(mid.p_relay_downlink_w, kPRdMid500) < 1e-12);

  // direct gain above both hops: clamps hold the powers at zero
  const LinkPowers cl = relay_link_powers(1e-13, 1e-13, 5e-13, 3.0, p);
  CHECK(cl.p_relay_uplink_w == 0.0);
  CHECK(cl.p_relay_downlink_w == 0.0);
}

TEST_CASE("power accounting ties out against the collapsed form") {
  const SystemParams p = SystemParams::defaults();
  std::mt19937_64 rng(55);
  for (int i = 0; i < 100; ++i) {
    const RandomGains g = draw(rng, /*clamp_free=*/true);
    const LinkPowers pw = relay_link_powers(g.h1, g.h2, g.hd, g.rate, p);
    const double acc = coop_energy_from_powers(pw, g.zeta, g.rate, p);
    CHECK(rel_err(acc, coop_energy_per_bit(g.h1, g.h2, g.hd, g.zeta, g.rate, p)) <
          1e-12);
  }
}

TEST_CASE("physical energy stays positive and dominates the unclamped form") {
  const SystemParams p = SystemParams::defaults();
  std::mt19937_64 rng(56);
  for (int i = 0; i < 200; ++i) {
    const RandomGains g = draw(rng, /*clamp_free=*/false);
    const double phys = coop_energy_per_bit_physical(g.h1, g.h2, g.hd, g.zeta, g.rate, p);
    CHECK(phys > 0.0);
    CHECK(phys >= coop_energy_per_bit(g.h1, g.h2, g.hd, g.zeta, g.rate, p) - 1e-25);
  }
}

TEST_CASE("cooperative energy is monotone in the gains, circuit power and zeta") {
  SystemParams p = SystemParams::defaults();
  std::mt19937_64 rng(99);
  for (int i = 0; i < 20; ++i) {
    const RandomGains g = draw(rng, /*clamp_free=*/true);
    const double base = coop_energy_per_bit(g.h1, g.h2, g.hd, g.zeta, g.rate, p);
    CHECK(coop_energy_per_bit(g.h1 * 1.01, g.h2, g.hd, g.zeta, g.rate, p) < base);
    CHECK(coop_energy_per_bit(g.h1, g.h2 * 1.01, g.hd, g.zeta, g.rate, p) < base);
    const double dz = 0.01 * (g.zeta < 0.9 ? 1.0 : -1.0);
    const double shifted =
        coop_energy_per_bit(g.h1, g.h2, g.hd, g.zeta + dz, g.rate, p);
    CHECK((shifted - base) * dz > 0.0);  // increasing in zeta
    SystemParams hot = p;
    hot.p_c_w *= 1.01;
    CHECK(coop_energy_per_bit(g.h1, g.h2, g.hd, g.zeta, g.rate, hot) > base);
  }
}

TEST_CASE("cooperation gain: sign behaviour and frozen values") {
  const SystemParams p = SystemParams::defaults();
  const double hd500 = pathloss_gain(500.0, p);
  // far relay, both hops ten times the direct distance
  const double far = pathloss_gain(5000.0, p);
  CHECK(cooperation_gain(far, far, hd500, 0.5, 3.0, p) < 0.0);

  // at this operating point even the midpoint relay loses to direct
  const double h = pathloss_gain(250.0, p);
  CHECK(rel_err(cooperation_gain(h, h, hd500, 0.5, 3.0, p), kGainMid500) < 1e-12);

  // long low-rate link: relay inside the cooperation region saves energy
  const double hd2000 = pathloss_gain(2000.0, p);
  const double g =
      cooperation_gain(pathloss_gain(880.0, p), pathloss_gain(1120.0, p), hd2000,
                       0.5, 1.0, p);
  CHECK(g > 0.0);
  CHECK(rel_err(g, kGain880At2000R1) < 1e-12);

  CHECK_THROWS_AS(cooperation_gain(h, h, hd500, 0.0, 3.0, p), std::domain_error);
}

TEST_CASE("sign consistency between gain and the energy comparison") {
  const SystemParams p = SystemParams::defaults();
  std::mt19937_64 rng(123);
  for (int i = 0; i < 200; ++i) {
    RandomGains g = draw(rng, /*clamp_free=*/true);
    if (g.zeta < 0.05) g.zeta = 0.05;
    const double gain = cooperation_gain(g.h1, g.h2, g.hd, g.zeta, g.rate, p);
    const double ec = coop_energy_per_bit_physical(g.h1, g.h2, g.hd, g.zeta, g.rate, p);
    const double ed = direct_energy_per_bit(g.hd, g.zeta, g.rate, p);
    CHECK((gain > 0.0) == (ec < ed));
  }
}

} // TEST_SUITE
