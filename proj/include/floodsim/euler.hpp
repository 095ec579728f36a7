#pragma once

#include <array>
#include <utility>
#include <vector>

#include "floodsim/boundary.hpp"
#include "floodsim/grid.hpp"
#include "floodsim/limiter.hpp"

namespace floodsim::euler {

struct GasParams {
  double gamma = 1.4;

  void validate() const {
    if (!(gamma > 1.0 && gamma <= 3.0))
      throw ValidationError("gas: gamma must lie in (1,3]");
  }
};

// Conservative state of one cell: density, momentum density, total energy density.
struct EulerCell {
  double rho = 1.0;
  double mom = 0.0;
  double ene = 1.0;
};

struct PrimCell {
  double rho = 1.0;
  double u = 0.0;
  double p = 1.0;
};

struct ContactValues {
  double p_star = 0.0;
  double u_star = 0.0;
};

EulerCell conservative_from_primitive(const PrimCell& w, const GasParams& gas);
PrimCell primitive_from_conservative(const EulerCell& c, const GasParams& gas);

// Returns (p, c); throws NonPhysicalState when the state has p <= 0.
std::pair<double, double> eos_pressure(const EulerCell& state, const GasParams& gas);
double sound_speed(const PrimCell& w, const GasParams& gas);

// Lagrangian HLL contact values at an interface.
ContactValues hll_lagrange_contact(const PrimCell& left, const PrimCell& right,
                                   const GasParams& gas);

// Interface flux: convective part upwinded on sign(u*), pressure part
// (0, p*, p* u*). Consistent: equal states give the exact flux F(U).
std::array<double, 3> euler_numerical_flux(const PrimCell& left, const PrimCell& right,
                                           const GasParams& gas);

// 1D field of conservative variables (ny == 1 grids).
struct EulerField {
  Grid2D grid;
  std::vector<double> rho, mom, ene;

  EulerField() = default;
  explicit EulerField(const Grid2D& g)
      : grid(g), rho(g.cells(), 1.0), mom(g.cells(), 0.0), ene(g.cells(), 1.0) {}
};

struct EulerStepParams {
  GasParams gas;
  LimiterParams limiter;
  bool first_order = false; // forces zero slopes
  BoundaryKind left = BoundaryKind::outflow;
  BoundaryKind right = BoundaryKind::outflow;
};

// One predictor/corrector step of the Lagrange-flux scheme:
// reconstruct -> contact solve -> upwind -> flux, twice, then half-sum.
EulerField euler_step(const EulerField& states, const EulerStepParams& params, double dt);

double max_signal_speed(const EulerField& states, const GasParams& gas);

// Built-in shock tube validation run on [0,1], discontinuity at x = 0.5,
// left state (1,0,1), right state (0.125,0,0.1).
struct SodResult {
  std::vector<double> x, rho, u, p;
  double l1_rho = 0.0, l1_u = 0.0, l1_p = 0.0;
  int steps = 0;
};

SodResult run_sod(int cells, double t_end = 0.23, double cfl = 0.25, double beta = 1.5,
                  bool first_order = false);

} // namespace floodsim::euler
