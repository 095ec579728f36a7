#include "floodsim/grid.hpp"

#include <cmath>

namespace floodsim {

void check_finite(const std::vector<double>& values, const std::string& what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]))
      throw NonFiniteState(what + ": non-finite value at cell " + std::to_string(i));
  }
}

} // namespace floodsim
