#include "judrs/channel.hpp"

namespace judrs {

void LinkState::validate() const {
  if (h1.size() != h2.size())
    throw std::domain_error("LinkState: h1/h2 length mismatch");
  if (fading_v &&
      (fading_v->v1.size() != h1.size() || fading_v->v2.size() != h2.size()))
    throw std::domain_error("LinkState: fading draw length mismatch");
  if (!(h_direct > 0.0))
    throw std::domain_error("LinkState: direct gain must be positive");
  for (std::size_t j = 0; j < h1.size(); ++j)
    if (!(h1[j] > 0.0) || !(h2[j] > 0.0))
      throw std::domain_error("LinkState: all gains must be positive");
}

} // namespace judrs
