#include "judrs/energy_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "judrs/link_budget.hpp"

namespace judrs {

namespace {
void check_energy_inputs(double h1, double h2, double h_d, double zeta,
                         double rate_r) {
  if (!(h1 > 0.0 && h2 > 0.0))
    throw std::domain_error("coop energy: relay gains must be positive");
  if (!(h_d >= 0.0)) throw std::domain_error("coop energy: direct gain must be nonnegative");
  if (!(zeta >= 0.0 && zeta <= 1.0))
    throw std::domain_error("coop energy: zeta must be in [0, 1]");
  if (!(rate_r > 0.0)) throw std::domain_error("coop energy: rate must be positive");
}
} // namespace

double coop_energy_per_bit(double h1, double h2, double h_d, double zeta,
                           double rate_r, const SystemParams& params) {
  check_energy_inputs(h1, h2, h_d, zeta, rate_r);
  const double f2r = rate_factor_f(2.0 * rate_r, params);
  const double two_rb = 2.0 * rate_r * params.bandwidth_hz;
  const double metric = 1.0 / h1 + zeta / h2 - h_d / (h1 * h2);
  return f2r / two_rb * metric + (1.0 + zeta) * params.p_c_w / two_rb;
}

LinkPowers relay_link_powers(double h1, double h2, double h_d, double rate_r,
                             const SystemParams& params) {
  check_energy_inputs(h1, h2, h_d, 0.5, rate_r);
  const double f2r = rate_factor_f(2.0 * rate_r, params);
  LinkPowers p;
  p.p_ms_uplink_w = f2r / h1;
  p.p_relay_uplink_w = std::max(0.0, f2r * (1.0 - h_d / h1) / h2);
  p.p_relay_downlink_w = std::max(0.0, f2r * (1.0 - h_d / h2) / h1);
  return p;
}

double coop_energy_from_powers(const LinkPowers& powers, double zeta,
                               double rate_r, const SystemParams& params) {
  const double two_rb = 2.0 * rate_r * params.bandwidth_hz;
  return (zeta * (powers.p_ms_uplink_w + powers.p_relay_uplink_w + 2.0 * params.p_c_w) +
          (1.0 - zeta) * (powers.p_relay_downlink_w + params.p_c_w)) /
         two_rb;
}

double coop_energy_per_bit_physical(double h1, double h2, double h_d, double zeta,
                                    double rate_r, const SystemParams& params) {
  check_energy_inputs(h1, h2, h_d, zeta, rate_r);
  return coop_energy_from_powers(relay_link_powers(h1, h2, h_d, rate_r, params),
                                 zeta, rate_r, params);
}

double direct_energy_per_bit(double h_d, double zeta, double rate_r,
                             const SystemParams& params) {
  if (!(h_d > 0.0)) throw std::domain_error("direct energy: gain must be positive");
  if (!(zeta >= 0.0 && zeta <= 1.0))
    throw std::domain_error("direct energy: zeta must be in [0, 1]");
  if (!(rate_r > 0.0)) throw std::domain_error("direct energy: rate must be positive");
  const double pe = params.target_ber;
  const double transmit =
      -(2.0 * zeta * params.code_rate * params.noise_n0_w_per_hz * std::log(5.0 * pe) /
        (3.0 * h_d * params.coding_gain * rate_r)) *
      (std::exp2(rate_r / params.code_rate) - 1.0);
  return transmit + zeta * params.p_c_w / (rate_r * params.bandwidth_hz);
}

double cooperation_gain(double h1, double h2, double h_d, double zeta,
                        double rate_r, const SystemParams& params) {
  if (zeta == 0.0)
    throw std::domain_error("cooperation_gain: undefined at zeta = 0 (no direct energy)");
  if (!(h_d > 0.0))
    throw std::domain_error("cooperation_gain: direct gain must be positive");
  const double e_direct = direct_energy_per_bit(h_d, zeta, rate_r, params);
  const double e_coop = coop_energy_per_bit_physical(h1, h2, h_d, zeta, rate_r, params);
  return (e_direct - e_coop) / e_direct;
}

} // namespace judrs
