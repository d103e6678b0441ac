#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "judrs/channel.hpp"
#include "judrs/geometry.hpp"
#include "judrs/system_params.hpp"

namespace judrs {

// Monte-Carlo outage estimation in the high-SNR (diversity-multiplexing)
// regime. Channel gains inside these trials are normalized to the direct
// link: E[h_D] = 1 and E[h_i] = (d_i / D)^(-p), so rho is the fading-free
// receive SNR of the direct link and the pinned rho grids are meaningful at
// any absolute pathloss scale.

enum class Direction { uplink, downlink };

// Admission-threshold family used inside outage trials: information
// theoretic (gain >= (2^{2R}-1)/rho, matching the outage events) or the
// modulation-based F(2R) thresholds of the selection protocol.
enum class ThresholdMode { capacity, mqam };

struct DmtConfig {
  std::size_t relay_count = 1;
  double multiplexing_r = 0.5;        // rate coupling R = r*log2(rho)
  std::optional<double> fixed_rate;   // overrides the coupling when set
  std::vector<double> snr_rho;        // linear, strictly increasing
  std::vector<std::uint64_t> trials_per_point;  // size 1 broadcasts
  double zeta = 0.5;
  Geometry geometry = Geometry::line(500.0, {{250.0, 0.0}});
  ThresholdMode thresholds = ThresholdMode::capacity;
  SystemParams params = SystemParams::defaults();
  unsigned workers = 1;

  double rate_at(double rho) const;
  std::uint64_t trials_at(std::size_t point) const;
  void validate() const;
};

struct OutagePoint {
  double rho = 0.0;
  double rate = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t outage_uplink = 0;
  std::uint64_t outage_downlink = 0;
  double p_out = 0.0;        // zeta-weighted
  double outage_weighted = 0.0;
  double ci_low = 0.0, ci_high = 0.0;  // 95% binomial (normal approx)
};

struct OutageCurve {
  std::size_t relay_count = 0;
  double multiplexing_r = 0.0;
  double zeta = 0.5;
  std::vector<OutagePoint> points;
  std::optional<double> fitted_slope;                 // diversity estimate
  std::optional<std::pair<double, double>> slope_ci;  // 95%, residual based
  std::uint64_t admission_violations = 0;

  // rho_db, rate, p_out, trials, outage events, binomial CI per row.
  std::string to_table() const;
  // fitted slope, its CI, and the theoretical d(N, r) reference.
  std::string summary() const;
};

// Mutual information of the direct MS-BS channel, log2(1 + rho*h_d).
double mutual_info_direct(double rho, double h_d);

// Mutual information of the combined two-phase channel after a relay
// retransmission, (1/2)*log2(1 + rho*(h_d + h2)). The 1/2 counts the two
// channel uses.
double mutual_info_two_hop(double rho, double h_d, double h2_selected);

// Theoretical diversity gain d(r) of the joint selection scheme with n
// relays; n = 0 degenerates to the direct Rayleigh link, (1 - r)^+.
double theoretical_dmt(std::size_t n, double r);

// One outage trial on a realized (normalized-gain) link state: outage iff
// the direct link fails and no admitted relay can close the two-hop channel.
// `direction` mirrors the roles (downlink decodes at the relay over h2 and
// forwards over h1). zeta only parameterizes the selection metric; the
// outage outcome is selection-invariant within the admitted set.
bool single_trial_outage(double rho, double rate_r, const LinkState& links,
                         Direction direction, std::size_t relay_count,
                         double zeta = 0.5,
                         ThresholdMode mode = ThresholdMode::capacity,
                         const SystemParams* params = nullptr);

// Full curve: per SNR point, zeta-weighted uplink/downlink outage
// frequencies with binomial CIs, plus a least-squares log-log slope over the
// points with at least 50 (weighted) outage events. Deterministic for a
// fixed seed under any worker count.
OutageCurve estimate_outage_curve(const DmtConfig& config, std::uint64_t seed);

namespace detail {
// Least-squares fit of -log2(p) vs log2(rho) with a residual-based 95%
// t-interval; exposed for the fit's own tests.
struct SlopeFit {
  std::optional<double> slope;
  std::optional<std::pair<double, double>> ci;
  std::size_t points_used = 0;
};
SlopeFit fit_loglog_slope(const std::vector<double>& rho,
                          const std::vector<double>& p_out,
                          const std::vector<double>& event_counts,
                          double min_events = 50.0);
} // namespace detail

} // namespace judrs
