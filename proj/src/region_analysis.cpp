#include "judrs/region_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "judrs/channel.hpp"
#include "judrs/energy_model.hpp"

namespace judrs {

namespace {
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}
} // namespace

GridSpec GridSpec::default_region(double d_ms_bs, std::size_t n) {
  GridSpec s;
  s.x_min = -0.6 * d_ms_bs;
  s.x_max = 1.6 * d_ms_bs;
  s.y_min = -0.6 * d_ms_bs;
  s.y_max = 1.6 * d_ms_bs;
  s.nx = s.ny = n;
  return s;
}

void GridSpec::validate() const {
  if (!(x_max > x_min) || !(y_max > y_min) || nx < 2 || ny < 2)
    throw std::domain_error("GridSpec: extents must be nonempty and at least 2x2");
}

double energy_saving_at(const Vec2& position, double d_ms_bs, double zeta,
                        double rate_r, const SystemParams& params) {
  if (!(d_ms_bs > 0.0))
    throw std::domain_error("energy_saving_at: MS-BS distance must be positive");
  const Vec2 ms{0.0, 0.0};
  const Vec2 bs{d_ms_bs, 0.0};
  const double d1 = distance(position, ms);
  const double d2 = distance(position, bs);
  if (!(d1 > 0.0) || !(d2 > 0.0))
    throw std::domain_error("energy_saving_at: relay position coincides with MS or BS");
  const double h1 = pathloss_gain(d1, params);
  const double h2 = pathloss_gain(d2, params);
  const double hd = pathloss_gain(d_ms_bs, params);
  return cooperation_gain(h1, h2, hd, zeta, rate_r, params);
}

double rate_h_factor(double rate_r, const SystemParams& params) {
  if (!(rate_r > 0.0)) throw std::domain_error("rate_h_factor: rate must be positive");
  return -(2.0 * params.code_rate * params.noise_n0_w_per_hz *
           std::log(5.0 * params.target_ber) /
           (3.0 * params.coding_gain * rate_r * params.k_gain)) *
         (std::exp2(rate_r / params.code_rate) - 1.0);
}

double approx_energy_saving_at(double d1_norm, double d2_norm, double zeta,
                               double rate_r, double d_ms_bs,
                               const SystemParams& params) {
  if (!(d1_norm > 0.0 && d2_norm > 0.0))
    throw std::domain_error("approx_energy_saving_at: normalized distances must be positive");
  if (!(d_ms_bs > 0.0))
    throw std::domain_error("approx_energy_saving_at: MS-BS distance must be positive");
  if (zeta == 0.0)
    throw std::domain_error("approx_energy_saving_at: undefined at zeta = 0");
  const double p = params.pathloss_exp;
  const double pe = params.target_ber;
  const double two_rb = 2.0 * rate_r * params.bandwidth_hz;
  const double d_km_p = std::pow(d_ms_bs / 1000.0, p);  // (D / 1 km)^p

  // normalized pathloss ratios: h_D/h_1 = d1n^p, h_D/h_2 = d2n^p
  const double x = std::pow(d1_norm, p);
  const double y = std::pow(d2_norm, p);

  // F(2R) with the 1+sqrt(1-Pe) ~ 2 approximation, spread over the relay
  // powers in per-terminal (clamped) form.
  const double f2r_app = (2.0 * params.code_rate * params.noise_n0_w_per_hz *
                          params.bandwidth_hz / (3.0 * params.coding_gain)) *
                         (std::exp2(2.0 * rate_r / params.code_rate) - 1.0) *
                         std::log(2.0 / (5.0 * pe));
  const double w = f2r_app * d_km_p / params.k_gain;  // per-power scale, W
  const double p_ms = w * x;
  const double p_ru = std::max(0.0, w * y * (1.0 - x));
  const double p_rd = std::max(0.0, w * x * (1.0 - y));
  const double e_coop = (zeta * (p_ms + p_ru + 2.0 * params.p_c_w) +
                         (1.0 - zeta) * (p_rd + params.p_c_w)) /
                        two_rb;

  const double e_direct = zeta * rate_h_factor(rate_r, params) * d_km_p +
                          zeta * params.p_c_w / (rate_r * params.bandwidth_hz);
  return (e_direct - e_coop) / e_direct;
}

RegionGrid compute_region_grid(const GridSpec& spec, double d_ms_bs, double zeta,
                               double rate_r, const SystemParams& params) {
  spec.validate();
  if (!(d_ms_bs > 0.0))
    throw std::domain_error("compute_region_grid: MS-BS distance must be positive");
  RegionGrid g;
  g.spec = spec;
  g.zeta = zeta;
  g.rate_r = rate_r;
  g.d_ms_bs = d_ms_bs;
  g.values.assign(spec.nx * spec.ny, kNan);
  for (std::size_t i = 0; i < spec.nx; ++i) {
    for (std::size_t j = 0; j < spec.ny; ++j) {
      const Vec2 pos{spec.x_center(i), spec.y_center(j)};
      const double d1 = std::hypot(pos.x, pos.y);
      const double d2 = std::hypot(pos.x - d_ms_bs, pos.y);
      if (d1 > 0.0 && d2 > 0.0)
        g.values[i * spec.ny + j] = energy_saving_at(pos, d_ms_bs, zeta, rate_r, params);
    }
  }
  return g;
}

std::size_t RegionGrid::positive_cell_count() const {
  std::size_t n = 0;
  for (double v : values)
    if (v > 0.0) ++n;
  return n;
}

std::string RegionGrid::to_table() const {
  std::ostringstream os;
  os << "x_m\ty_m\te_saving_frac\n";
  for (std::size_t i = 0; i < spec.nx; ++i)
    for (std::size_t j = 0; j < spec.ny; ++j)
      os << num(spec.x_center(i)) << "\t" << num(spec.y_center(j)) << "\t"
         << num(at(i, j)) << "\n";
  return os.str();
}

OptimalLocation optimal_relay_location(double d_ms_bs, double zeta, double rate_r,
                                       const SystemParams& params) {
  if (!(d_ms_bs > 0.0))
    throw std::domain_error("optimal_relay_location: MS-BS distance must be positive");
  auto value = [&](double x, double y) {
    const double d1 = std::hypot(x, y);
    const double d2 = std::hypot(x - d_ms_bs, y);
    if (!(d1 > 0.0) || !(d2 > 0.0)) return -std::numeric_limits<double>::infinity();
    return energy_saving_at({x, y}, d_ms_bs, zeta, rate_r, params);
  };

  // coarse scan over the strip around the MS-BS segment; 121 odd so the
  // axis row y = 0 is sampled exactly
  const std::size_t n = 121;
  double best_x = 0.0, best_y = 0.0;
  double best_v = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double x = d_ms_bs * (0.002 + 0.996 * static_cast<double>(i) / (n - 1));
    for (std::size_t j = 0; j < n; ++j) {
      const double y = d_ms_bs * (-0.5 + static_cast<double>(j) / (n - 1));
      const double v = value(x, y);
      if (v > best_v) {
        best_v = v;
        best_x = x;
        best_y = y;
      }
    }
  }

  // shrinking-neighborhood descent down to sub-0.05 m steps
  double step = d_ms_bs * 0.996 / (n - 1);
  while (step > 0.05) {
    bool moved = false;
    for (int di = -1; di <= 1; ++di) {
      for (int dj = -1; dj <= 1; ++dj) {
        if (di == 0 && dj == 0) continue;
        const double v = value(best_x + di * step, best_y + dj * step);
        if (v > best_v) {
          best_v = v;
          best_x += di * step;
          best_y += dj * step;
          moved = true;
        }
      }
    }
    if (!moved) step *= 0.5;
  }

  OptimalLocation loc;
  loc.position = {best_x, best_y};
  loc.d1_norm = std::hypot(best_x, best_y) / d_ms_bs;
  loc.d2_norm = std::hypot(best_x - d_ms_bs, best_y) / d_ms_bs;
  loc.e_saving = best_v;
  return loc;
}

namespace {

// Marching squares over the cell-center lattice. Segments are collected per
// lattice cell, then chained into polylines; everything is iterated in a
// fixed order so repeated runs emit identical output.
struct SegmentEnd {
  long long qx, qy;  // quantized coordinates for exact matching
};

struct Segment {
  Vec2 a, b;
};

long long quant(double v, double scale) {
  return static_cast<long long>(std::llround(v / scale * 4096.0));
}

Vec2 interp(double x0, double y0, double v0, double x1, double y1, double v1,
            double level) {
  const double t = (level - v0) / (v1 - v0);
  return {x0 + t * (x1 - x0), y0 + t * (y1 - y0)};
}

} // namespace

std::vector<ContourLine> extract_contours(const RegionGrid& grid,
                                          const std::vector<double>& levels) {
  std::vector<ContourLine> out;
  const GridSpec& s = grid.spec;
  const double qscale = std::max(s.cell_dx(), s.cell_dy());

  for (double level : levels) {
    std::vector<Segment> segs;
    for (std::size_t i = 0; i + 1 < s.nx; ++i) {
      for (std::size_t j = 0; j + 1 < s.ny; ++j) {
        const double v00 = grid.at(i, j), v10 = grid.at(i + 1, j);
        const double v01 = grid.at(i, j + 1), v11 = grid.at(i + 1, j + 1);
        if (!(std::isfinite(v00) && std::isfinite(v10) && std::isfinite(v01) &&
              std::isfinite(v11)))
          continue;
        const double x0 = s.x_center(i), x1 = s.x_center(i + 1);
        const double y0 = s.y_center(j), y1 = s.y_center(j + 1);
        int code = 0;
        if (v00 > level) code |= 1;
        if (v10 > level) code |= 2;
        if (v11 > level) code |= 4;
        if (v01 > level) code |= 8;
        if (code == 0 || code == 15) continue;

        // crossing points on the four cell edges
        Vec2 bottom, right, top, left;
        const bool has_b = (v00 > level) != (v10 > level);
        const bool has_r = (v10 > level) != (v11 > level);
        const bool has_t = (v01 > level) != (v11 > level);
        const bool has_l = (v00 > level) != (v01 > level);
        if (has_b) bottom = interp(x0, y0, v00, x1, y0, v10, level);
        if (has_r) right = interp(x1, y0, v10, x1, y1, v11, level);
        if (has_t) top = interp(x0, y1, v01, x1, y1, v11, level);
        if (has_l) left = interp(x0, y0, v00, x0, y1, v01, level);

        switch (code) {
          case 1: case 14: segs.push_back({left, bottom}); break;
          case 2: case 13: segs.push_back({bottom, right}); break;
          case 3: case 12: segs.push_back({left, right}); break;
          case 4: case 11: segs.push_back({right, top}); break;
          case 6: case 9:  segs.push_back({bottom, top}); break;
          case 7: case 8:  segs.push_back({left, top}); break;
          case 5: case 10: {
            // saddle: disambiguate with the cell-center mean
            const double center = 0.25 * (v00 + v10 + v01 + v11);
            const bool center_high = center > level;
            if ((code == 5) == center_high) {
              segs.push_back({left, top});
              segs.push_back({bottom, right});
            } else {
              segs.push_back({left, bottom});
              segs.push_back({right, top});
            }
            break;
          }
          default: break;
        }
      }
    }

    // chain segments end-to-end
    auto key = [&](const Vec2& v) {
      return std::pair<long long, long long>(quant(v.x, qscale), quant(v.y, qscale));
    };
    std::multimap<std::pair<long long, long long>, std::size_t> by_end;
    for (std::size_t k = 0; k < segs.size(); ++k) {
      by_end.insert({key(segs[k].a), k});
      by_end.insert({key(segs[k].b), k});
    }
    std::vector<bool> used(segs.size(), false);
    for (std::size_t k = 0; k < segs.size(); ++k) {
      if (used[k]) continue;
      used[k] = true;
      ContourLine line;
      line.level = level;
      line.points = {segs[k].a, segs[k].b};
      // extend forward from the tail until no unused continuation exists
      bool extended = true;
      while (extended) {
        extended = false;
        auto range = by_end.equal_range(key(line.points.back()));
        for (auto it = range.first; it != range.second; ++it) {
          const std::size_t m = it->second;
          if (used[m]) continue;
          const Vec2 tail = line.points.back();
          const Vec2 next = (key(segs[m].a) == key(tail)) ? segs[m].b : segs[m].a;
          used[m] = true;
          line.points.push_back(next);
          extended = true;
          break;
        }
      }
      line.closed = key(line.points.front()) == key(line.points.back());
      out.push_back(std::move(line));
    }
  }
  return out;
}

std::string contours_to_table(const std::vector<ContourLine>& lines) {
  std::ostringstream os;
  os << "level_frac\tpolyline_id\tvertex_id\tx_m\ty_m\n";
  for (std::size_t k = 0; k < lines.size(); ++k)
    for (std::size_t v = 0; v < lines[k].points.size(); ++v)
      os << num(lines[k].level) << "\t" << k << "\t" << v << "\t"
         << num(lines[k].points[v].x) << "\t" << num(lines[k].points[v].y) << "\n";
  return os.str();
}

} // namespace judrs
