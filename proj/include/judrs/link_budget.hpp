#pragma once

#include "judrs/system_params.hpp"

namespace judrs {

// Modulation and coding power math for trellis-coded MQAM over a known
// channel gain. The constellation size is continuous: a hop carrying
// `rate` bits/s/Hz with code rate eta_c uses M = 2^(rate/eta_c).

// Constellation size for the rate actually transmitted on a hop.
double constellation_size(double rate, const SystemParams& params);

// Gray-mapped coherent MQAM BER approximation, 0.2*exp(-1.5*gamma/(M-1)).
// Valid range of the approximation caps the BER at 0.2.
double ber_mqam(double gamma, double m);

// Inverse of ber_mqam in gamma. pe must be in (0, 0.2].
double required_snr(double pe, double m);

// Uncoded transmit power reaching BER pe over gain h.
double required_power_uncoded(double pe, double m, double h, const SystemParams& params);

// Trellis-coded transmit power for a hop carrying `rate` bits/s/Hz at BER pe
// over gain h: uncoded power scaled by eta_c/G_c with M = 2^(rate/eta_c).
double coded_power(double rate, double pe, double h, const SystemParams& params);

// Two-hop decode-and-forward end-to-end BER from the per-hop BERs.
double df_end_to_end_ber(double pe1, double pe2);

// Per-hop BER budget making both hops contribute equally to an end-to-end
// target: 1 - sqrt(1 - pe), evaluated in the cancellation-free form.
double per_hop_ber_target(double pe);

// Power-gain product F(rate): the transmit power needed on a unit-gain hop
// carrying `rate` bits/s/Hz at the per-hop share of the target BER. This is
// the quantity behind the g_th1/g_th2 admission thresholds.
double rate_factor_f(double rate, const SystemParams& params);

} // namespace judrs
