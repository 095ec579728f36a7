#pragma once

#include "floodsim/euler.hpp"

namespace floodsim::euler {

// Exact solution of the ideal-gas Riemann problem (Newton iteration on the
// contact pressure). Used as an independent reference for the flux scheme.
struct RiemannFanSolution {
  PrimCell left, right;
  GasParams gas;
  double p_star = 0.0;
  double u_star = 0.0;

  // Self-similar solution sampled at xi = x/t.
  PrimCell sample(double xi) const;
};

RiemannFanSolution solve_riemann_exact(const PrimCell& left, const PrimCell& right,
                                       const GasParams& gas, int max_iter = 100,
                                       double tol = 1e-12);

} // namespace floodsim::euler
