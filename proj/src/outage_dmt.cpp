#include "judrs/outage_dmt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "judrs/link_budget.hpp"
#include "judrs/parallel.hpp"
#include "judrs/relay_selection.hpp"
#include "judrs/rng.hpp"

namespace judrs {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// two-sided 97.5% Student-t quantiles for small dof, then the normal limit
double t_critical(std::size_t dof) {
  static const double table[] = {12.706, 4.303, 3.182, 2.776, 2.571, 2.447,
                                 2.365,  2.306, 2.262, 2.228, 2.201, 2.179,
                                 2.160,  2.145, 2.131, 2.120, 2.110, 2.101,
                                 2.093,  2.086, 2.080, 2.074, 2.069, 2.064,
                                 2.060,  2.056, 2.052, 2.048, 2.045, 2.042};
  if (dof == 0) return std::numeric_limits<double>::infinity();
  if (dof <= 30) return table[dof - 1];
  return 1.960;
}

} // namespace

double DmtConfig::rate_at(double rho) const {
  if (fixed_rate) return *fixed_rate;
  return multiplexing_r * std::log2(rho);
}

std::uint64_t DmtConfig::trials_at(std::size_t point) const {
  if (trials_per_point.size() == 1) return trials_per_point[0];
  return trials_per_point.at(point);
}

void DmtConfig::validate() const {
  if (snr_rho.empty()) throw std::domain_error("DmtConfig: empty SNR grid");
  for (std::size_t i = 0; i < snr_rho.size(); ++i) {
    if (!(snr_rho[i] > 0.0)) throw std::domain_error("DmtConfig: SNR must be positive");
    if (i > 0 && !(snr_rho[i] > snr_rho[i - 1]))
      throw std::domain_error("DmtConfig: SNR grid must be strictly increasing");
  }
  if (trials_per_point.empty() ||
      (trials_per_point.size() != 1 && trials_per_point.size() != snr_rho.size()))
    throw std::domain_error("DmtConfig: trials_per_point must be scalar or match the grid");
  for (std::uint64_t t : trials_per_point)
    if (t < 1) throw std::domain_error("DmtConfig: trials must be at least 1");
  if (!(zeta >= 0.0 && zeta <= 1.0)) throw std::domain_error("DmtConfig: zeta out of range");
  if (!fixed_rate && !(multiplexing_r >= 0.0))
    throw std::domain_error("DmtConfig: multiplexing gain must be nonnegative");
  if (geometry.relay_count() < relay_count)
    throw std::domain_error("DmtConfig: geometry has fewer relays than relay_count");
  geometry.validate();
}

double mutual_info_direct(double rho, double h_d) {
  if (!(rho > 0.0)) throw std::domain_error("mutual_info_direct: rho must be positive");
  if (!(h_d >= 0.0)) throw std::domain_error("mutual_info_direct: gain must be nonnegative");
  return std::log1p(rho * h_d) / std::numbers::ln2;
}

double mutual_info_two_hop(double rho, double h_d, double h2_selected) {
  if (!(rho > 0.0)) throw std::domain_error("mutual_info_two_hop: rho must be positive");
  if (!(h_d >= 0.0 && h2_selected >= 0.0))
    throw std::domain_error("mutual_info_two_hop: gains must be nonnegative");
  return 0.5 * std::log1p(rho * (h_d + h2_selected)) / std::numbers::ln2;
}

double theoretical_dmt(std::size_t n, double r) {
  if (!(r >= 0.0)) throw std::domain_error("theoretical_dmt: r must be nonnegative");
  if (n == 0) return std::max(0.0, 1.0 - r);
  const double nn = static_cast<double>(n);
  return (nn + 1.0) * std::max(0.0, 1.0 - (2.0 * nn + 1.0) * r / (nn + 1.0));
}

namespace {

struct TrialOutcome {
  bool outage = false;
  bool violation = false;  // admitted relay that still missed the rate
};

// First-hop admission threshold on the (normalized) gain. Capacity mode
// mirrors the outage events; mqam mode rescales the protocol threshold
// (P_max - P_C) h >= F(2R) into normalized gains, with
// rho = (P_max - P_C)/(N0 B) and ref_gain the physical gain at which the
// normalized value is 1 (the direct-link pathloss).
double admission_threshold(double rho, double rate, ThresholdMode mode,
                           const SystemParams& params, double ref_gain) {
  if (mode == ThresholdMode::capacity) return (std::exp2(2.0 * rate) - 1.0) / rho;
  return rate_factor_f(2.0 * rate, params) /
         (rho * params.noise_n0_w_per_hz * params.bandwidth_hz * ref_gain);
}

// Direction-mirrored outage event: first hop decodes at the relay, second
// hop combines with the overheard direct copy at the destination.
TrialOutcome run_trial(double rho, double rate, const LinkState& links,
                       Direction dir, std::size_t n, double zeta,
                       ThresholdMode mode, double t1) {
  TrialOutcome out;
  if (mutual_info_direct(rho, links.h_direct) >= rate) return out;

  const std::vector<double>& first = (dir == Direction::uplink) ? links.h1 : links.h2;
  const std::vector<double>& second = (dir == Direction::uplink) ? links.h2 : links.h1;

  // admitted set and selection by the minimum-energy metric
  std::optional<std::size_t> best;
  double best_metric = std::numeric_limits<double>::infinity();
  bool any_admitted = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (first[i] < t1) continue;
    const double t2 = std::max(0.0, t1 * (1.0 - links.h_direct / first[i]));
    if (second[i] < t2) continue;
    any_admitted = true;
    const double m = selection_metric(first[i], second[i], links.h_direct, zeta);
    if (m < best_metric) {
      best_metric = m;
      best = i;
    }
  }

  if (!any_admitted) {
    out.outage = true;
    return out;
  }
  const bool two_hop_ok =
      mutual_info_two_hop(rho, links.h_direct, second[*best]) >= rate;
  out.outage = !two_hop_ok;
  out.violation = !two_hop_ok && mode == ThresholdMode::capacity;
  return out;
}

} // namespace

bool single_trial_outage(double rho, double rate_r, const LinkState& links,
                         Direction direction, std::size_t relay_count,
                         double zeta, ThresholdMode mode,
                         const SystemParams* params) {
  if (relay_count > links.relay_count())
    throw std::domain_error("single_trial_outage: relay_count exceeds the link state");
  const SystemParams defaults = SystemParams::defaults();
  const SystemParams& sp = params ? *params : defaults;
  const double t1 = admission_threshold(rho, rate_r, mode, sp, 1.0);
  return run_trial(rho, rate_r, links, direction, relay_count, zeta, mode, t1)
      .outage;
}

OutageCurve estimate_outage_curve(const DmtConfig& config, std::uint64_t seed) {
  config.validate();
  const std::size_t n = config.relay_count;
  const double zeta = config.zeta;
  const double d_ms_bs = config.geometry.ms_bs_distance();
  const double p_exp = config.params.pathloss_exp;

  // gain means relative to the direct link
  std::vector<double> mean1(n), mean2(n);
  for (std::size_t j = 0; j < n; ++j) {
    mean1[j] = std::pow(config.geometry.ms_relay_distance(j) / d_ms_bs, -p_exp);
    mean2[j] = std::pow(config.geometry.relay_bs_distance(j) / d_ms_bs, -p_exp);
  }

  OutageCurve curve;
  curve.relay_count = n;
  curve.multiplexing_r = config.fixed_rate ? 0.0 : config.multiplexing_r;
  curve.zeta = zeta;

  // physical gain behind a normalized gain of 1 (used by mqam thresholds)
  const double ref_gain = config.params.k_gain *
                          std::pow(d_ms_bs / 1000.0, -config.params.pathloss_exp);

  constexpr std::uint64_t kChunk = 8192;
  for (std::size_t k = 0; k < config.snr_rho.size(); ++k) {
    const double rho = config.snr_rho[k];
    const double rate = config.rate_at(rho);
    const std::uint64_t trials = config.trials_at(k);
    const double t1 =
        admission_threshold(rho, rate, config.thresholds, config.params, ref_gain);

    struct ChunkCounts {
      std::uint64_t ul = 0, dl = 0, viol = 0;
    };
    std::vector<ChunkCounts> chunks((trials + kChunk - 1) / kChunk);

    parallel_chunks(trials, config.workers, kChunk,
                    [&](std::uint64_t c, std::uint64_t begin, std::uint64_t end) {
                      ChunkCounts local;
                      LinkState links;
                      links.h1.resize(n);
                      links.h2.resize(n);
                      for (std::uint64_t t = begin; t < end; ++t) {
                        SplitMix64 g(derive_seed(seed, k, t));
                        for (std::size_t j = 0; j < n; ++j)
                          links.h1[j] = mean1[j] * sample_fading(g);
                        for (std::size_t j = 0; j < n; ++j)
                          links.h2[j] = mean2[j] * sample_fading(g);
                        links.h_direct = sample_fading(g);
                        const TrialOutcome ul =
                            run_trial(rho, rate, links, Direction::uplink, n, zeta,
                                      config.thresholds, t1);
                        const TrialOutcome dl =
                            run_trial(rho, rate, links, Direction::downlink, n, zeta,
                                      config.thresholds, t1);
                        local.ul += ul.outage;
                        local.dl += dl.outage;
                        local.viol += ul.violation + dl.violation;
                      }
                      chunks[c] = local;
                    });

    OutagePoint pt;
    pt.rho = rho;
    pt.rate = rate;
    pt.trials = trials;
    for (const ChunkCounts& c : chunks) {
      pt.outage_uplink += c.ul;
      pt.outage_downlink += c.dl;
      curve.admission_violations += c.viol;
    }
    const double pu = static_cast<double>(pt.outage_uplink) / static_cast<double>(trials);
    const double pd = static_cast<double>(pt.outage_downlink) / static_cast<double>(trials);
    pt.p_out = zeta * pu + (1.0 - zeta) * pd;
    pt.outage_weighted = zeta * static_cast<double>(pt.outage_uplink) +
                         (1.0 - zeta) * static_cast<double>(pt.outage_downlink);
    const double var = (zeta * zeta * pu * (1.0 - pu) +
                        (1.0 - zeta) * (1.0 - zeta) * pd * (1.0 - pd)) /
                       static_cast<double>(trials);
    const double half = 1.96 * std::sqrt(var);
    pt.ci_low = std::max(0.0, pt.p_out - half);
    pt.ci_high = std::min(1.0, pt.p_out + half);
    curve.points.push_back(pt);
  }

  std::vector<double> rhos, ps, events;
  for (const OutagePoint& pt : curve.points) {
    rhos.push_back(pt.rho);
    ps.push_back(pt.p_out);
    events.push_back(pt.outage_weighted);
  }
  const detail::SlopeFit fit = detail::fit_loglog_slope(rhos, ps, events);
  curve.fitted_slope = fit.slope;
  curve.slope_ci = fit.ci;
  return curve;
}

namespace detail {

SlopeFit fit_loglog_slope(const std::vector<double>& rho,
                          const std::vector<double>& p_out,
                          const std::vector<double>& event_counts,
                          double min_events) {
  SlopeFit fit;
  std::vector<double> x, y;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (event_counts[i] < min_events || !(p_out[i] > 0.0)) continue;
    x.push_back(std::log2(rho[i]));
    y.push_back(std::log2(p_out[i]));
  }
  fit.points_used = x.size();
  if (x.size() < 2) return fit;

  const std::size_t m = x.size();
  double xm = 0.0, ym = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    xm += x[i];
    ym += y[i];
  }
  xm /= static_cast<double>(m);
  ym /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (x[i] - xm) * (x[i] - xm);
    sxy += (x[i] - xm) * (y[i] - ym);
  }
  const double b = sxy / sxx;
  fit.slope = -b;  // diversity estimate

  if (m > 2) {
    double rss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double resid = y[i] - (ym + b * (x[i] - xm));
      rss += resid * resid;
    }
    const double se = std::sqrt(rss / static_cast<double>(m - 2) / sxx);
    const double t = t_critical(m - 2);
    fit.ci = std::make_pair(-b - t * se, -b + t * se);
  }
  return fit;
}

} // namespace detail

std::string OutageCurve::to_table() const {
  std::ostringstream os;
  os << "rho_db\trate_bits_per_s_per_hz\tp_out\ttrials\toutage_events_weighted\t"
        "ci_low\tci_high\n";
  for (const OutagePoint& pt : points)
    os << num(10.0 * std::log10(pt.rho)) << "\t" << num(pt.rate) << "\t"
       << num(pt.p_out) << "\t" << pt.trials << "\t" << num(pt.outage_weighted)
       << "\t" << num(pt.ci_low) << "\t" << num(pt.ci_high) << "\n";
  return os.str();
}

std::string OutageCurve::summary() const {
  std::ostringstream os;
  os << "relay_count\t" << relay_count << "\n";
  os << "multiplexing_r\t" << num(multiplexing_r) << "\n";
  os << "zeta\t" << num(zeta) << "\n";
  os << "fitted_slope\t" << (fitted_slope ? num(*fitted_slope) : "unavailable") << "\n";
  if (slope_ci)
    os << "slope_ci95\t" << num(slope_ci->first) << "\t" << num(slope_ci->second) << "\n";
  else
    os << "slope_ci95\tunavailable\n";
  os << "theoretical_d\t" << num(theoretical_dmt(relay_count, multiplexing_r)) << "\n";
  os << "admission_violations\t" << admission_violations << "\n";
  return os.str();
}

} // namespace judrs
