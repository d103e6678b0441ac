#include "judrs/link_budget.hpp"

#include <cmath>
#include <stdexcept>

namespace judrs {

double constellation_size(double rate, const SystemParams& params) {
  if (!(rate > 0.0)) throw std::domain_error("constellation_size: rate must be positive");
  return std::exp2(rate / params.code_rate);
}

double ber_mqam(double gamma, double m) {
  if (!(m > 1.0)) throw std::domain_error("ber_mqam: constellation size must exceed 1");
  if (!(gamma >= 0.0)) throw std::domain_error("ber_mqam: SNR must be nonnegative");
  return 0.2 * std::exp(-1.5 * gamma / (m - 1.0));
}

double required_snr(double pe, double m) {
  if (!(m > 1.0)) throw std::domain_error("required_snr: constellation size must exceed 1");
  if (!(pe > 0.0 && pe <= 0.2))
    throw std::domain_error("required_snr: BER must be in (0, 0.2]");
  return -(m - 1.0) * std::log(5.0 * pe) / 1.5;
}

double required_power_uncoded(double pe, double m, double h, const SystemParams& params) {
  if (!(h > 0.0)) throw std::domain_error("required_power_uncoded: gain must be positive");
  if (!(pe > 0.0 && pe <= 0.2))
    throw std::domain_error("required_power_uncoded: BER must be in (0, 0.2]");
  if (!(m > 1.0)) throw std::domain_error("required_power_uncoded: constellation size must exceed 1");
  return (2.0 * std::log(5.0 * pe) * params.noise_n0_w_per_hz * params.bandwidth_hz / (3.0 * h)) *
         (1.0 - m);
}

double coded_power(double rate, double pe, double h, const SystemParams& params) {
  if (!(h > 0.0)) throw std::domain_error("coded_power: gain must be positive");
  if (!(rate > 0.0)) throw std::domain_error("coded_power: rate must be positive");
  if (!(pe > 0.0 && pe <= 0.2))
    throw std::domain_error("coded_power: BER must be in (0, 0.2]");
  return (2.0 * params.code_rate * std::log(5.0 * pe) * params.noise_n0_w_per_hz *
          params.bandwidth_hz / (3.0 * h * params.coding_gain)) *
         (1.0 - std::exp2(rate / params.code_rate));
}

double df_end_to_end_ber(double pe1, double pe2) {
  if (!(pe1 >= 0.0 && pe1 <= 1.0 && pe2 >= 0.0 && pe2 <= 1.0))
    throw std::domain_error("df_end_to_end_ber: BERs must be in [0, 1]");
  return pe1 + pe2 - pe1 * pe2;
}

double per_hop_ber_target(double pe) {
  if (!(pe >= 0.0 && pe <= 1.0))
    throw std::domain_error("per_hop_ber_target: BER must be in [0, 1]");
  // 1 - sqrt(1-pe), written so that tiny pe keeps full precision
  return pe / (1.0 + std::sqrt(1.0 - pe));
}

double rate_factor_f(double rate, const SystemParams& params) {
  if (!(rate > 0.0)) throw std::domain_error("rate_factor_f: rate must be positive");
  const double pe = params.target_ber;
  return (2.0 * params.code_rate * params.noise_n0_w_per_hz * params.bandwidth_hz /
          (3.0 * params.coding_gain)) *
         (std::exp2(rate / params.code_rate) - 1.0) *
         std::log((1.0 + std::sqrt(1.0 - pe)) / (5.0 * pe));
}

} // namespace judrs
