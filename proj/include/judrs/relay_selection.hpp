#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "judrs/energy_model.hpp"
#include "judrs/system_params.hpp"

namespace judrs {

struct CandidateRelay {
  std::size_t index = 0;  // caller-assigned identifier
  double h1 = 0.0;        // MS-relay power gain
  double h2 = 0.0;        // relay-BS power gain
};

struct SelectionDecision {
  TransmissionMode mode = TransmissionMode::infeasible;
  std::optional<std::size_t> relay_index;  // into the candidate list
  double metric_value = 0.0;               // selection metric of the winner; NaN if none
  EnergyReport energy;
};

// Minimum-energy selection metric, 1/h1 + zeta/h2 - h_d/(h1*h2). The
// cooperative energy is a positive affine transform of this value, so the
// argmin over candidates is the minimum-energy relay.
double selection_metric(double h1, double h2, double h_d, double zeta);

// Power feasibility of a candidate: both the MS first-hop power and the relay
// uplink power must fit under p_max - p_c. These are exactly the g_th1/g_th2
// admission thresholds of the selection protocol.
bool relay_feasible(const CandidateRelay& c, double h_d, double rate_r,
                    const SystemParams& params);

// Whether the direct MS-BS link supports rate R within the power budget.
bool direct_feasible(double h_d, double rate_r, const SystemParams& params);

// Minimum Energy Criterion with direct-transmission fallback. Among
// feasible candidates, picks the metric argmin (ties to the lowest list
// position); falls back to direct transmission when that beats the winner's
// physical cooperative energy or when no candidate is feasible. Returns
// mode infeasible when neither a feasible relay nor a feasible direct link
// exists. The reported energy is the physical (clamped-power) value.
SelectionDecision min_energy_select(std::span<const CandidateRelay> candidates,
                                    double h_d, double zeta, double rate_r,
                                    const SystemParams& params);

// Benchmark selectors. Both return a position into the candidate list and
// throw on an empty list; ties go to the lowest position.

// argmax_i min(h1_i, h2_i)
std::size_t best_worst_channel_select(std::span<const CandidateRelay> candidates);

// argmax_i (h1_i^-1 + h2_i^-1)^-1
std::size_t best_harmonic_mean_select(std::span<const CandidateRelay> candidates);

} // namespace judrs
