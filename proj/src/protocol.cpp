#include "judrs/protocol.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "judrs/link_budget.hpp"

namespace judrs {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string index_list(const std::vector<std::size_t>& v) {
  if (v.empty()) return "-";
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}

} // namespace

std::vector<std::size_t> candidate_set_gamma(const LinkState& links, double rate_r,
                                             const SystemParams& params) {
  const double budget = params.p_max_w - params.p_c_w;
  const double gth1 = rate_factor_f(2.0 * rate_r, params);
  std::vector<std::size_t> gamma;
  for (std::size_t i = 0; i < links.relay_count(); ++i)
    if (budget * links.h1[i] >= gth1) gamma.push_back(i);
  return gamma;
}

std::vector<double> sigma_thresholds(const LinkState& links, double rate_r,
                                     const SystemParams& params) {
  const double gth1 = rate_factor_f(2.0 * rate_r, params);
  std::vector<double> th(links.relay_count());
  for (std::size_t i = 0; i < links.relay_count(); ++i)
    th[i] = std::max(0.0, gth1 * (1.0 - links.h_direct / links.h1[i]));
  return th;
}

std::vector<std::size_t> candidate_set_sigma(const std::vector<std::size_t>& gamma,
                                             const LinkState& links, double rate_r,
                                             const SystemParams& params) {
  const double budget = params.p_max_w - params.p_c_w;
  const std::vector<double> th = sigma_thresholds(links, rate_r, params);
  std::vector<std::size_t> sigma;
  for (std::size_t i : gamma)
    if (budget * links.h2[i] >= th[i]) sigma.push_back(i);
  return sigma;
}

ProtocolTrace run_judrs_with_links(const Scenario& scenario, LinkState links) {
  links.validate();
  const SystemParams& p = scenario.params;
  const double rate = scenario.rate_r;
  const double budget = p.p_max_w - p.p_c_w;

  ProtocolTrace t;
  t.threshold_gth1 = rate_factor_f(2.0 * rate, p);
  t.threshold_gth2 = sigma_thresholds(links, rate, p);

  // Step 1: MS broadcast at fixed power; relays learn h1_i, BS learns h_D.
  t.message_log.push_back(
      {1, "MS", "relays,BS", "RTS1 tx_power_w=" + num(budget)});
  t.gamma_set = candidate_set_gamma(links, rate, p);

  // Step 2: gamma members report to the BS with their CQI (the h1_i estimate).
  for (std::size_t i : t.gamma_set)
    t.message_log.push_back({2, "relay" + std::to_string(i), "BS",
                             "RTS2 cqi_h1=" + num(links.h1[i])});

  // Step 3: BS measures h2_i and keeps the relays that clear g_th2.
  t.sigma_set = candidate_set_sigma(t.gamma_set, links, rate, p);
  t.message_log.push_back(
      {3, "BS", "BS", "admission g_th1_w=" + num(t.threshold_gth1) +
                          " sigma=" + index_list(t.sigma_set)});

  // Step 4: BS selects under the minimum-energy criterion and announces.
  std::vector<CandidateRelay> candidates;
  candidates.reserve(t.sigma_set.size());
  for (std::size_t i : t.sigma_set)
    candidates.push_back({i, links.h1[i], links.h2[i]});
  SelectionDecision d = min_energy_select(candidates, links.h_direct,
                                          scenario.traffic.zeta, rate, p);
  // map the winner position back to the relay index
  if (d.relay_index) {
    const std::size_t relay = t.sigma_set[*d.relay_index];
    d.relay_index = relay;
    d.energy.relay_index = relay;
  }
  t.decision = d;

  if (d.mode == TransmissionMode::cooperative) {
    t.message_log.push_back({4, "BS", "relays,MS",
                             "selected relay" + std::to_string(*d.relay_index) +
                                 " h_d=" + num(links.h_direct)});
    const LinkPowers& pw = *d.energy.link_powers;
    t.message_log.push_back(
        {5, "MS,relay" + std::to_string(*d.relay_index), "BS,MS",
         "data p_ms_ul_w=" + num(pw.p_ms_uplink_w) +
             " p_relay_ul_w=" + num(pw.p_relay_uplink_w) +
             " p_relay_dl_w=" + num(pw.p_relay_downlink_w)});
  } else if (d.mode == TransmissionMode::direct) {
    t.message_log.push_back({4, "BS", "relays,MS", "selected direct"});
    t.message_log.push_back({5, "MS,BS", "BS,MS", "data direct"});
  } else {
    t.message_log.push_back({4, "BS", "relays,MS", "selected none (outage)"});
  }

  t.links = std::move(links);
  return t;
}

std::string ProtocolTrace::to_text() const {
  std::ostringstream os;
  os << "judrs-trace\n";
  os << "gamma " << index_list(gamma_set) << "\n";
  os << "sigma " << index_list(sigma_set) << "\n";
  os << "g_th1_w " << num(threshold_gth1) << "\n";
  os << "g_th2_w";
  for (double v : threshold_gth2) os << " " << num(v);
  os << "\n";
  os << "decision ";
  switch (decision.mode) {
    case TransmissionMode::cooperative:
      os << "cooperative relay=" << *decision.relay_index
         << " energy_j_per_bit=" << num(decision.energy.energy_per_bit);
      break;
    case TransmissionMode::direct:
      os << "direct energy_j_per_bit=" << num(decision.energy.energy_per_bit);
      break;
    case TransmissionMode::infeasible:
      os << "infeasible";
      break;
  }
  os << "\n";
  for (const ProtocolMessage& m : message_log)
    os << "msg step=" << m.step << " from=" << m.sender << " to=" << m.receivers
       << " " << m.payload << "\n";
  return os.str();
}

} // namespace judrs
