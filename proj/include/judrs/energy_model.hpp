#pragma once

#include <cstddef>
#include <optional>

#include "judrs/system_params.hpp"

namespace judrs {

// Per-link transmit powers of one cooperative assignment. Powers are the
// physical values: the relay stays silent (0 W) on a leg where the overheard
// direct-link copy already meets the combining target.
struct LinkPowers {
  double p_ms_uplink_w = 0.0;
  double p_relay_uplink_w = 0.0;
  double p_relay_downlink_w = 0.0;
};

enum class TransmissionMode { cooperative, direct, infeasible };

struct EnergyReport {
  double energy_per_bit = 0.0;  // J per information bit, battery terminals only
  TransmissionMode mode = TransmissionMode::infeasible;
  std::optional<LinkPowers> link_powers;   // absent for direct/infeasible
  std::optional<std::size_t> relay_index;
};

// Total battery-terminal energy per information bit for cooperation through a
// relay with gains (h1, h2), direct gain h_d, traffic split zeta. This is the
// collapsed selection form,
//   F(2R)/(2RB) * (1/h1 + zeta/h2 - h_d/(h1*h2)) + (1+zeta)*P_C/(2RB),
// which keeps the selection metric an exact affine transform of the energy.
// The cross term is NOT clamped, so the value can go negative when the direct
// gain exceeds a relay gain; use coop_energy_per_bit_physical for accounting.
double coop_energy_per_bit(double h1, double h2, double h_d, double zeta,
                           double rate_r, const SystemParams& params);

// Physical cooperative energy: same split, but built from the clamped
// per-terminal powers of relay_link_powers. Equals coop_energy_per_bit
// whenever h_d <= min(h1, h2) (no clamping), and stays positive otherwise.
double coop_energy_per_bit_physical(double h1, double h2, double h_d, double zeta,
                                    double rate_r, const SystemParams& params);

// Energy accounting from explicit powers:
//   [zeta*(P_M^U + P_R^U + 2 P_C) + (1-zeta)*(P_R^D + P_C)] / (2RB).
double coop_energy_from_powers(const LinkPowers& powers, double zeta,
                               double rate_r, const SystemParams& params);

// MS energy per information bit for direct transmission at rate R.
double direct_energy_per_bit(double h_d, double zeta, double rate_r,
                             const SystemParams& params);

// Transmit powers of the MS and the selected relay (uplink first hop,
// uplink second hop, downlink second hop), clamped at zero.
LinkPowers relay_link_powers(double h1, double h2, double h_d, double rate_r,
                             const SystemParams& params);

// Fractional energy saving of cooperation over direct transmission,
// (E_direct - E_coop) / E_direct, with E_coop the physical (clamped) energy.
// Negative wherever the relay position does not pay off. zeta = 0 leaves no
// direct-transmission energy to compare against and is rejected.
double cooperation_gain(double h1, double h2, double h_d, double zeta,
                        double rate_r, const SystemParams& params);

} // namespace judrs
