#pragma once

#include <cmath>

#include "floodsim/grid.hpp"

namespace floodsim {

// dt = cfl * min(dx,dy) / max_signal_speed, falling back to dt_max for a
// quiescent state (speed == 0).
inline double compute_dt_cfl(double max_signal_speed, const Grid2D& grid, double cfl,
                             double dt_max = 1e-3) {
  if (!std::isfinite(max_signal_speed) || max_signal_speed < 0.0)
    throw NonFiniteState("compute_dt_cfl: max signal speed is not a finite non-negative number");
  if (max_signal_speed == 0.0) return dt_max;
  return cfl * grid.min_spacing() / max_signal_speed;
}

// Two-stage second-order advance: U + dt*(rhs(U) + rhs(U + dt*rhs(U)))/2.
// State needs operator+ and scalar multiplication; rhs errors propagate.
template <class State, class Rhs>
State heun_advance(const State& u, Rhs&& rhs, double dt) {
  const State k1 = rhs(u);
  const State predicted = u + dt * k1;
  const State k2 = rhs(predicted);
  return u + (0.5 * dt) * (k1 + k2);
}

} // namespace floodsim
