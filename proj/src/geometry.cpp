#include "judrs/geometry.hpp"

#include <stdexcept>
#include <string>

namespace judrs {

void Geometry::validate() const {
  if (!(ms_bs_distance() > 0.0))
    throw std::domain_error("Geometry: MS and BS must not coincide");
  for (std::size_t j = 0; j < relay_positions.size(); ++j) {
    if (!(ms_relay_distance(j) > 0.0) || !(relay_bs_distance(j) > 0.0))
      throw std::domain_error("Geometry: relay " + std::to_string(j) +
                              " coincides with MS or BS");
  }
}

Geometry Geometry::line(double d_ms_bs, std::vector<Vec2> relays) {
  Geometry g;
  g.ms_position = {0.0, 0.0};
  g.bs_position = {d_ms_bs, 0.0};
  g.relay_positions = std::move(relays);
  g.validate();
  return g;
}

void Scenario::validate() const {
  geometry.validate();
  traffic.validate();
  params.validate();
  if (!(rate_r > 0.0)) throw std::domain_error("Scenario: rate must be positive");
}

} // namespace judrs
