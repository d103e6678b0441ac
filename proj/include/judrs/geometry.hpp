#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "judrs/system_params.hpp"

namespace judrs {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(const Vec2& a, const Vec2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Node layout: one MS, one BS, N candidate relays, coordinates in meters.
struct Geometry {
  Vec2 ms_position;
  Vec2 bs_position;
  std::vector<Vec2> relay_positions;

  std::size_t relay_count() const { return relay_positions.size(); }
  double ms_bs_distance() const { return distance(ms_position, bs_position); }
  double ms_relay_distance(std::size_t j) const { return distance(ms_position, relay_positions[j]); }
  double relay_bs_distance(std::size_t j) const { return distance(relay_positions[j], bs_position); }

  void validate() const;

  // MS at the origin, BS on the positive x axis.
  static Geometry line(double d_ms_bs, std::vector<Vec2> relays = {});
};

// One full simulation setup: who is where, how the traffic splits, and at
// what end-to-end spectral efficiency the link must run.
struct Scenario {
  Geometry geometry;
  TrafficProfile traffic;
  double rate_r = 3.0;  // end-to-end spectral efficiency, bits/s/Hz
  SystemParams params = SystemParams::defaults();
  bool fading = true;

  void validate() const;
};

} // namespace judrs
