#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "judrs/channel.hpp"
#include "judrs/geometry.hpp"
#include "judrs/relay_selection.hpp"

namespace judrs {

// One handshake message of the selection procedure.
struct ProtocolMessage {
  int step = 0;  // 1..5
  std::string sender;
  std::string receivers;
  std::string payload;
};

// Record of one joint uplink/downlink selection round: the realized links,
// both admission sets, the thresholds that produced them, the decision and
// the full message exchange. One round serves both directions; there is no
// second selection pass anywhere in a trace.
struct ProtocolTrace {
  LinkState links;
  std::vector<std::size_t> gamma_set;   // step-1 admitted relays
  std::vector<std::size_t> sigma_set;   // step-3 admitted relays (subset of gamma)
  double threshold_gth1 = 0.0;          // power*gain, shared by all relays
  std::vector<double> threshold_gth2;   // power*gain, per relay
  SelectionDecision decision;
  std::vector<ProtocolMessage> message_log;

  std::size_t message_count() const { return message_log.size(); }

  // Deterministic one-record-per-line text form, used by the golden tests
  // and the CLI document output.
  std::string to_text() const;
};

// Step-1 admission: relays whose MS-side gain supports the first hop within
// the power budget, (p_max - p_c) * h1_i >= g_th1 = F(2R).
std::vector<std::size_t> candidate_set_gamma(const LinkState& links, double rate_r,
                                             const SystemParams& params);

// Step-3 admission: gamma members whose BS-side gain supports the relay
// uplink power, (p_max - p_c) * h2_i >= g_th2_i = F(2R)(1 - h_D/h1_i), with
// the right-hand side clamped at zero (relays overheard worse than the
// direct link always pass).
std::vector<std::size_t> candidate_set_sigma(const std::vector<std::size_t>& gamma,
                                             const LinkState& links, double rate_r,
                                             const SystemParams& params);

// Per-relay step-3 threshold values (clamped at zero).
std::vector<double> sigma_thresholds(const LinkState& links, double rate_r,
                                     const SystemParams& params);

// Runs the five-step handshake on an already-realized link state.
ProtocolTrace run_judrs_with_links(const Scenario& scenario, LinkState links);

// Realizes links from the scenario and runs the handshake.
template <class Urbg>
ProtocolTrace run_judrs(const Scenario& scenario, Urbg& rng) {
  scenario.validate();
  LinkState links =
      realize_links(scenario.geometry, scenario.params,
                    scenario.fading ? FadingMode::on : FadingMode::off, rng);
  return run_judrs_with_links(scenario, std::move(links));
}

} // namespace judrs
