#pragma once

#include <algorithm>
#include <cmath>

#include "floodsim/grid.hpp"

namespace floodsim {

struct LimiterParams {
  double beta = 1.5; // 1 = minmod, 2 = superbee

  void validate() const {
    if (!(beta >= 1.0 && beta <= 2.0))
      throw ValidationError("limiter: beta must lie in [1,2]");
  }
};

// Sweby limiter phi(a,b) = (ab>0) sign(a) max(min(|a|,beta|b|), min(beta|a|,|b|)).
inline double sweby_limiter(double a, double b, double beta) {
  if (a * b <= 0.0) return 0.0;
  const double aa = std::fabs(a);
  const double ab = std::fabs(b);
  const double m = std::fmax(std::fmin(aa, beta * ab), std::fmin(beta * aa, ab));
  return a > 0.0 ? m : -m;
}

enum class Axis { X, Y };

// Limited slope per cell (per unit length). Boundary cells along the chosen
// axis get zero slope; fewer than 3 cells along the axis gives all zeros.
CellField muscl_reconstruct(const CellField& field, Axis axis, const LimiterParams& params);

} // namespace floodsim
