#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "floodsim/debris.hpp"

namespace floodsim::debris {

// Car-following particle system used as an independent reference for the
// continuum model. Positions must stay strictly increasing.
struct DiscreteDebris {
  std::vector<double> x; // ordered positions
  std::vector<double> v; // velocities
  double gap_min = 1e-12;
};

// Ambient water sampled at particle positions.
struct WaterProbe {
  std::function<double(double)> u; // velocity
  std::function<double(double)> h; // depth
};

// dx_j/dt = v_j,
// dv_j/dt = (u - v_j)/tau_D - friction_rate(h) v_j
//           + lambda v_j (v_{j+1} - v_j)/(x_{j+1} - x_j);
// the last particle carries no interaction term.
void discrete_debris_rhs(const DiscreteDebris& sys, const WaterProbe& water,
                         const DebrisParams& params, std::vector<double>& dxdt,
                         std::vector<double>& dvdt);

void discrete_advance_rk4(DiscreteDebris& sys, const WaterProbe& water,
                          const DebrisParams& params, double t_end, int steps);

// (position, density) samples: rho(x_j) = rho0 * ell / (x_{j+1} - x_j).
std::vector<std::pair<double, double>> density_from_spacing(const DiscreteDebris& sys,
                                                            const DebrisParams& params);

} // namespace floodsim::debris
