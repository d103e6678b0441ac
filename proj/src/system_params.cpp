#include "judrs/system_params.hpp"

#include <cmath>
#include <string>

#include "judrs/units.hpp"

namespace judrs {

SystemParams SystemParams::defaults() {
  SystemParams p;
  p.p_max_w = units::dbm_to_watt(33.0);
  p.p_c_w = units::dbm_to_watt(20.0);
  p.k_gain = units::db_to_linear(-128.1);
  p.bandwidth_hz = 180e3;
  p.carrier_hz = 2.0e9;
  p.noise_n0_w_per_hz = units::dbm_to_watt(-171.0);
  p.pathloss_exp = 3.76;
  p.coding_gain = units::db_to_linear(4.7);
  p.code_rate = 2.0 / 3.0;
  p.target_ber = 1e-4;
  return p;
}

namespace {
void require(bool ok, const std::string& what) {
  if (!ok) throw std::domain_error("SystemParams: " + what);
}
} // namespace

void SystemParams::validate() const {
  require(p_max_w > 0.0, "p_max must be positive");
  require(p_c_w > 0.0, "p_c must be positive");
  require(p_c_w < p_max_w, "p_c must be below p_max");
  require(k_gain > 0.0, "pathloss constant must be positive");
  require(bandwidth_hz > 0.0, "bandwidth must be positive");
  require(carrier_hz > 0.0, "carrier frequency must be positive");
  require(noise_n0_w_per_hz > 0.0, "noise density must be positive");
  require(pathloss_exp > 0.0, "pathloss exponent must be positive");
  require(coding_gain > 0.0, "coding gain must be positive");
  require(code_rate > 0.0 && code_rate <= 1.0, "code rate must be in (0, 1]");
  require(target_ber > 0.0 && target_ber < 1.0, "target BER must be in (0, 1)");
}

TrafficProfile TrafficProfile::from_zeta(double zeta) {
  TrafficProfile t;
  t.zeta = zeta;
  t.validate();
  return t;
}

TrafficProfile TrafficProfile::from_loads(double uplink_bits, double downlink_bits) {
  if (uplink_bits < 0.0 || downlink_bits < 0.0 || uplink_bits + downlink_bits <= 0.0)
    throw std::domain_error("TrafficProfile: loads must be nonnegative with a positive total");
  TrafficProfile t;
  t.l_uplink_bits = uplink_bits;
  t.l_downlink_bits = downlink_bits;
  t.zeta = uplink_bits / (uplink_bits + downlink_bits);
  return t;
}

void TrafficProfile::validate() const {
  if (!(zeta >= 0.0 && zeta <= 1.0))
    throw std::domain_error("TrafficProfile: zeta must be in [0, 1]");
  if (l_uplink_bits > 0.0 || l_downlink_bits > 0.0) {
    const double total = l_uplink_bits + l_downlink_bits;
    if (total <= 0.0) throw std::domain_error("TrafficProfile: total load must be positive");
    const double implied = l_uplink_bits / total;
    if (std::abs(implied - zeta) > 1e-12)
      throw std::domain_error("TrafficProfile: zeta inconsistent with the loads");
  }
}

} // namespace judrs
