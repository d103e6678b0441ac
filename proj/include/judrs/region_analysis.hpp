#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "judrs/geometry.hpp"
#include "judrs/system_params.hpp"

namespace judrs {

// Planar analysis of the cooperation energy gain: where does placing a relay
// save energy over the direct link, and where is the best spot. Convention:
// MS at the origin, BS at (D, 0), fading ignored.

struct GridSpec {
  double x_min = 0.0, x_max = 0.0;
  double y_min = 0.0, y_max = 0.0;
  std::size_t nx = 0, ny = 0;

  double cell_dx() const { return (x_max - x_min) / static_cast<double>(nx); }
  double cell_dy() const { return (y_max - y_min) / static_cast<double>(ny); }
  double x_center(std::size_t i) const { return x_min + (static_cast<double>(i) + 0.5) * cell_dx(); }
  double y_center(std::size_t j) const { return y_min + (static_cast<double>(j) + 0.5) * cell_dy(); }

  // Default extent used for the region figures: [-0.6D, 1.6D]^2 at 201x201.
  static GridSpec default_region(double d_ms_bs, std::size_t n = 201);
  void validate() const;
};

struct RegionGrid {
  GridSpec spec;
  std::vector<double> values;  // row-major [i * ny + j]; NaN on degenerate cells
  double zeta = 0.0;
  double rate_r = 0.0;
  double d_ms_bs = 0.0;

  double at(std::size_t i, std::size_t j) const { return values[i * spec.ny + j]; }
  std::size_t positive_cell_count() const;

  // Delimited table, one row per cell: x_m, y_m, e_saving_frac.
  std::string to_table() const;
};

struct OptimalLocation {
  double d1_norm = 0.0;   // d1 / D
  double d2_norm = 0.0;   // d2 / D
  Vec2 position;          // meters, MS at origin
  double e_saving = 0.0;  // fraction
};

// Energy-saving fraction for a relay at `position`; gains are pure pathloss.
// Positions on top of the MS or BS are rejected.
double energy_saving_at(const Vec2& position, double d_ms_bs, double zeta,
                        double rate_r, const SystemParams& params);

// H(rate) scale factor of the approximate closed form; positive for any
// valid BER target.
double rate_h_factor(double rate_r, const SystemParams& params);

// Closed-form approximation of the saving in normalized distances
// (d1/D, d2/D), obtained by replacing 1 + sqrt(1-P_e) with 2 in the per-hop
// BER split. Agrees with energy_saving_at to O(P_e).
double approx_energy_saving_at(double d1_norm, double d2_norm, double zeta,
                               double rate_r, double d_ms_bs,
                               const SystemParams& params);

// Evaluates the saving on every cell center. Cells that land exactly on the
// MS or BS are stored as NaN and never count as region members.
RegionGrid compute_region_grid(const GridSpec& spec, double d_ms_bs, double zeta,
                               double rate_r, const SystemParams& params);

// Maximizer of the energy saving: coarse grid scan (121x121 over the segment
// strip) followed by shrinking-step pattern refinement below 0.05 m.
OptimalLocation optimal_relay_location(double d_ms_bs, double zeta, double rate_r,
                                       const SystemParams& params);

// Iso-level polylines of the saving surface (marching squares on the cell
// centers), for external plotting.
struct ContourLine {
  double level = 0.0;
  std::vector<Vec2> points;
  bool closed = false;
};

std::vector<ContourLine> extract_contours(const RegionGrid& grid,
                                          const std::vector<double>& levels);

// Delimited listing: level, polyline id, vertex id, x_m, y_m.
std::string contours_to_table(const std::vector<ContourLine>& lines);

} // namespace judrs
