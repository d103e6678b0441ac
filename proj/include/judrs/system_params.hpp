#pragma once

#include <stdexcept>

namespace judrs {

// Physical-layer constants of the link and energy model. All fields are
// linear SI (W, Hz, dimensionless); conversion from the dB/dBm config
// representation happens at the parsing boundary (see units.hpp).
struct SystemParams {
  double p_max_w = 0.0;        // maximum terminal power (radiated + circuit)
  double p_c_w = 0.0;          // circuit power drawn while transmitting
  double k_gain = 0.0;         // pathloss constant at the 1 km reference distance
  double bandwidth_hz = 0.0;
  double carrier_hz = 0.0;
  double noise_n0_w_per_hz = 0.0;
  double pathloss_exp = 0.0;
  double coding_gain = 0.0;    // trellis-code gain, linear
  double code_rate = 0.0;      // eta_c in (0, 1]
  double target_ber = 0.0;     // P_e in (0, 1)

  // Default parameter set: 33 dBm / 20 dBm terminal powers, -128.1 dB
  // pathloss constant (3GPP TR 36.942 at 1 km), 180 kHz, 2 GHz carrier,
  // -171 dBm/Hz noise density, exponent 3.76, 4.7 dB coding gain,
  // rate-2/3 code, target BER 1e-4.
  static SystemParams defaults();

  void validate() const;
};

struct TrafficProfile {
  double zeta = 0.5;           // uplink share of the total traffic load
  double l_uplink_bits = 0.0;  // optional absolute loads; zero when unset
  double l_downlink_bits = 0.0;

  static TrafficProfile from_zeta(double zeta);
  static TrafficProfile from_loads(double uplink_bits, double downlink_bits);

  void validate() const;
};

} // namespace judrs
