#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "judrs/geometry.hpp"
#include "judrs/rng.hpp"
#include "judrs/system_params.hpp"

namespace judrs {

// Channel power gains for one realization. h1[j] is the MS-relay link of
// relay j, h2[j] the relay-BS link, h_direct the MS-BS link. Links are
// reciprocal: the same gain serves both transmit directions.
struct FadingDraws {
  std::vector<double> v1;
  std::vector<double> v2;
  double v_direct = 1.0;
};

struct LinkState {
  std::vector<double> h1;
  std::vector<double> h2;
  double h_direct = 0.0;
  std::optional<FadingDraws> fading_v;

  std::size_t relay_count() const { return h1.size(); }
  void validate() const;
};

// Distance-only channel power gain, k_gain * (d / 1 km)^(-p). The reference
// distance is 1 km: with the default K = -128.1 dB and p = 3.76 this matches
// the TR 36.942 macro pathloss.
inline double pathloss_gain(double d_meters, const SystemParams& params) {
  if (!(d_meters > 0.0))
    throw std::domain_error("pathloss_gain: distance must be positive");
  return params.k_gain * std::pow(d_meters / 1000.0, -params.pathloss_exp);
}

// Unit-mean exponential fading draw (Rayleigh power fading).
template <class Urbg>
double sample_fading(Urbg& rng) {
  // -log(1-u) with u in [0, 1); never evaluates log(0)
  return -std::log1p(-uniform01(rng));
}

enum class FadingMode { off, on };

// Realizes all channel gains of a geometry: pathloss times (for fading on) a
// unit-mean exponential per link. Draw order is fixed: v1[0..N), v2[0..N),
// then the direct link.
template <class Urbg>
LinkState realize_links(const Geometry& geometry, const SystemParams& params,
                        FadingMode fading, Urbg& rng) {
  geometry.validate();
  const std::size_t n = geometry.relay_count();
  LinkState ls;
  ls.h1.resize(n);
  ls.h2.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    ls.h1[j] = pathloss_gain(geometry.ms_relay_distance(j), params);
    ls.h2[j] = pathloss_gain(geometry.relay_bs_distance(j), params);
  }
  ls.h_direct = pathloss_gain(geometry.ms_bs_distance(), params);
  if (fading == FadingMode::on) {
    FadingDraws v;
    v.v1.resize(n);
    v.v2.resize(n);
    for (std::size_t j = 0; j < n; ++j) v.v1[j] = sample_fading(rng);
    for (std::size_t j = 0; j < n; ++j) v.v2[j] = sample_fading(rng);
    v.v_direct = sample_fading(rng);
    for (std::size_t j = 0; j < n; ++j) {
      ls.h1[j] *= v.v1[j];
      ls.h2[j] *= v.v2[j];
    }
    ls.h_direct *= v.v_direct;
    ls.fading_v = std::move(v);
  }
  return ls;
}

} // namespace judrs
