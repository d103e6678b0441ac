#include "judrs/relay_selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "judrs/link_budget.hpp"

namespace judrs {

double selection_metric(double h1, double h2, double h_d, double zeta) {
  if (!(h1 > 0.0 && h2 > 0.0))
    throw std::domain_error("selection_metric: relay gains must be positive");
  if (!(h_d >= 0.0))
    throw std::domain_error("selection_metric: direct gain must be nonnegative");
  if (!(zeta >= 0.0 && zeta <= 1.0))
    throw std::domain_error("selection_metric: zeta must be in [0, 1]");
  return 1.0 / h1 + zeta / h2 - h_d / (h1 * h2);
}

bool relay_feasible(const CandidateRelay& c, double h_d, double rate_r,
                    const SystemParams& params) {
  const double budget = params.p_max_w - params.p_c_w;
  const double gth1 = rate_factor_f(2.0 * rate_r, params);
  if (budget * c.h1 < gth1) return false;
  const double gth2 = std::max(0.0, gth1 * (1.0 - h_d / c.h1));
  return budget * c.h2 >= gth2;
}

bool direct_feasible(double h_d, double rate_r, const SystemParams& params) {
  if (!(h_d > 0.0)) return false;
  return coded_power(rate_r, params.target_ber, h_d, params) + params.p_c_w <=
         params.p_max_w;
}

SelectionDecision min_energy_select(std::span<const CandidateRelay> candidates,
                                    double h_d, double zeta, double rate_r,
                                    const SystemParams& params) {
  SelectionDecision d;
  d.metric_value = std::numeric_limits<double>::quiet_NaN();

  std::optional<std::size_t> best;
  double best_metric = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!relay_feasible(candidates[i], h_d, rate_r, params)) continue;
    const double m = selection_metric(candidates[i].h1, candidates[i].h2, h_d, zeta);
    if (m < best_metric) {  // strict: ties stay with the earliest candidate
      best_metric = m;
      best = i;
    }
  }

  const bool direct_ok = direct_feasible(h_d, rate_r, params);
  const double e_direct =
      direct_ok ? direct_energy_per_bit(h_d, zeta, rate_r, params) : 0.0;

  if (!best) {
    if (direct_ok) {
      d.mode = TransmissionMode::direct;
      d.energy = {e_direct, TransmissionMode::direct, std::nullopt, std::nullopt};
    }
    return d;
  }

  const CandidateRelay& win = candidates[*best];
  // Mode comparison on physically realizable energies; the metric argmin
  // above follows the unclamped form.
  const double e_coop =
      coop_energy_per_bit_physical(win.h1, win.h2, h_d, zeta, rate_r, params);
  d.metric_value = best_metric;

  if (direct_ok && e_direct <= e_coop) {
    d.mode = TransmissionMode::direct;
    d.energy = {e_direct, TransmissionMode::direct, std::nullopt, std::nullopt};
    return d;
  }

  d.mode = TransmissionMode::cooperative;
  d.relay_index = *best;
  d.energy.mode = TransmissionMode::cooperative;
  d.energy.relay_index = *best;
  d.energy.link_powers = relay_link_powers(win.h1, win.h2, h_d, rate_r, params);
  d.energy.energy_per_bit = e_coop;
  return d;
}

std::size_t best_worst_channel_select(std::span<const CandidateRelay> candidates) {
  if (candidates.empty())
    throw std::invalid_argument("best_worst_channel_select: empty candidate list");
  std::size_t best = 0;
  double best_val = std::min(candidates[0].h1, candidates[0].h2);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double v = std::min(candidates[i].h1, candidates[i].h2);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  return best;
}

std::size_t best_harmonic_mean_select(std::span<const CandidateRelay> candidates) {
  if (candidates.empty())
    throw std::invalid_argument("best_harmonic_mean_select: empty candidate list");
  std::size_t best = 0;
  // compare 1/h1 + 1/h2 (smaller sum = larger harmonic mean)
  double best_val = 1.0 / candidates[0].h1 + 1.0 / candidates[0].h2;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double v = 1.0 / candidates[i].h1 + 1.0 / candidates[i].h2;
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  return best;
}

} // namespace judrs
