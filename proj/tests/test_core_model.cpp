#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "judrs/channel.hpp"
#include "judrs/geometry.hpp"
#include "judrs/rng.hpp"
#include "judrs/system_params.hpp"
#include "judrs/units.hpp"

using namespace judrs;

namespace {
// high-precision evaluations of K*(d/1km)^-p at the default parameters
constexpr double kGain500m = 2.098325138837315532e-12;
constexpr double kGain1000m = 1.5488166189124813447e-13;

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }
} // namespace

TEST_SUITE("core_model") {

TEST_CASE("default parameters round-trip their dB form to 1e-9") {
  const SystemParams p = SystemParams::defaults();
  CHECK(rel_err(units::watt_to_dbm(p.p_max_w), 33.0) < 1e-9);
  CHECK(rel_err(units::watt_to_dbm(p.p_c_w), 20.0) < 1e-9);
  CHECK(rel_err(units::linear_to_db(p.k_gain), -128.1) < 1e-9);
  CHECK(rel_err(units::watt_to_dbm(p.noise_n0_w_per_hz), -171.0) < 1e-9);
  CHECK(rel_err(units::linear_to_db(p.coding_gain), 4.7) < 1e-9);
  CHECK(p.bandwidth_hz == 180e3);
  CHECK(p.carrier_hz == 2.0e9);
  CHECK(p.pathloss_exp == 3.76);
  CHECK(p.code_rate == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(p.target_ber == 1e-4);
  CHECK_NOTHROW(p.validate());
}

TEST_CASE("parameter invariants are enforced") {
  SystemParams p = SystemParams::defaults();
  p.p_c_w = p.p_max_w * 1.5;
  CHECK_THROWS_AS(p.validate(), std::domain_error);
  p = SystemParams::defaults();
  p.target_ber = 0.0;
  CHECK_THROWS_AS(p.validate(), std::domain_error);
  p = SystemParams::defaults();
  p.code_rate = 1.2;
  CHECK_THROWS_AS(p.validate(), std::domain_error);
}

TEST_CASE("traffic profile ties zeta to the loads") {
  const TrafficProfile t = TrafficProfile::from_loads(300.0, 700.0);
  CHECK(t.zeta == doctest::Approx(0.3).epsilon(1e-15));
  CHECK_THROWS_AS(TrafficProfile::from_loads(0.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(TrafficProfile::from_zeta(1.5), std::domain_error);
}

TEST_CASE("pathloss gain at the reference distance equals K") {
  const SystemParams p = SystemParams::defaults();
  CHECK(pathloss_gain(1000.0, p) == p.k_gain);
  CHECK(rel_err(pathloss_gain(1000.0, p), kGain1000m) < 1e-12);
}

TEST_CASE("pathloss gain matches the high-precision value at 500 m") {
  const SystemParams p = SystemParams::defaults();
  CHECK(rel_err(pathloss_gain(500.0, p), kGain500m) < 1e-12);
}

TEST_CASE("pathloss gain is strictly decreasing") {
  const SystemParams p = SystemParams::defaults();
  for (double d : {100.0, 500.0, 2000.0})
    CHECK(pathloss_gain(2.0 * d, p) < pathloss_gain(d, p));
  CHECK_THROWS_AS(pathloss_gain(0.0, p), std::domain_error);
  CHECK_THROWS_AS(pathloss_gain(-5.0, p), std::domain_error);
}

TEST_CASE("pathloss gain is scale covariant") {
  const SystemParams p = SystemParams::defaults();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(0.1, 10.0);
  for (int i = 0; i < 200; ++i) {
    const double d = 50.0 + 5000.0 * dist(rng) / 10.0;
    const double alpha = dist(rng);
    const double lhs = pathloss_gain(alpha * d, p);
    const double rhs = std::pow(alpha, -p.pathloss_exp) * pathloss_gain(d, p);
    CHECK(rel_err(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("fading draws have unit mean and the exponential tail") {
  SplitMix64 rng(20240601);
  const int n = 1'000'000;
  double sum = 0.0;
  int above_one = 0;
  for (int i = 0; i < n; ++i) {
    const double v = sample_fading(rng);
    sum += v;
    above_one += v > 1.0;
  }
  CHECK(std::abs(sum / n - 1.0) < 0.01);
  CHECK(std::abs(static_cast<double>(above_one) / n - std::exp(-1.0)) < 0.005);
}

TEST_CASE("fading stream is deterministic under a fixed seed") {
  std::mt19937_64 a(77), b(77);
  for (int i = 0; i < 100; ++i) CHECK(sample_fading(a) == sample_fading(b));
}

TEST_CASE("fading distribution passes a KS test against Exp(1)") {
  SplitMix64 rng(5);
  const std::size_t n = 100'000;
  std::vector<double> draws(n);
  for (double& v : draws) v = sample_fading(rng);
  std::sort(draws.begin(), draws.end());
  double d_stat = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double cdf = -std::expm1(-draws[i]);
    const double hi = static_cast<double>(i + 1) / n - cdf;
    const double lo = cdf - static_cast<double>(i) / n;
    d_stat = std::max({d_stat, hi, lo});
  }
  // critical value at the 1% level for large n
  CHECK(d_stat < 1.62762 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("realize_links midpoint symmetry without fading") {
  const SystemParams p = SystemParams::defaults();
  const Geometry g = Geometry::line(500.0, {{250.0, 0.0}});
  std::mt19937_64 rng(1);
  const LinkState ls = realize_links(g, p, FadingMode::off, rng);
  CHECK(ls.h1[0] == ls.h2[0]);
  CHECK(ls.h1[0] == pathloss_gain(250.0, p));
  CHECK(rel_err(ls.h_direct, kGain500m) < 1e-12);
  CHECK_FALSE(ls.fading_v.has_value());
}

TEST_CASE("realize_links without fading is a pure function") {
  const SystemParams p = SystemParams::defaults();
  const Geometry g = Geometry::line(777.0, {{100.0, 40.0}, {600.0, -230.0}});
  std::mt19937_64 a(3), b(99);
  const LinkState x = realize_links(g, p, FadingMode::off, a);
  const LinkState y = realize_links(g, p, FadingMode::off, b);
  CHECK(x.h1 == y.h1);
  CHECK(x.h2 == y.h2);
  CHECK(x.h_direct == y.h_direct);
}

TEST_CASE("realize_links fading preserves the pathloss mean") {
  const SystemParams p = SystemParams::defaults();
  const Geometry g = Geometry::line(500.0, {});
  SplitMix64 rng(42);
  const int n = 100'000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += realize_links(g, p, FadingMode::on, rng).h_direct;
  CHECK(std::abs(sum / n / pathloss_gain(500.0, p) - 1.0) < 0.01);
}

TEST_CASE("realize_links validates the geometry and sizes") {
  const SystemParams p = SystemParams::defaults();
  Geometry g;
  g.ms_position = {0.0, 0.0};
  g.bs_position = {500.0, 0.0};
  g.relay_positions = {{0.0, 0.0}};  // on top of the MS
  std::mt19937_64 rng(1);
  CHECK_THROWS_AS(realize_links(g, p, FadingMode::off, rng), std::domain_error);

  const Geometry ok = Geometry::line(500.0, {{100.0, 0.0}, {200.0, 50.0}});
  const LinkState ls = realize_links(ok, p, FadingMode::on, rng);
  CHECK(ls.relay_count() == 2);
  CHECK(ls.fading_v->v1.size() == 2);
  CHECK(ls.fading_v->v2.size() == 2);
  for (std::size_t j = 0; j < 2; ++j) {
    CHECK(ls.h1[j] > 0.0);
    CHECK(ls.h2[j] > 0.0);
  }
  CHECK_NOTHROW(ls.validate());
}

} // TEST_SUITE
