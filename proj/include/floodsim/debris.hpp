#pragma once

#include <vector>

#include "floodsim/boundary.hpp"
#include "floodsim/grid.hpp"

namespace floodsim::debris {

struct DebrisParams {
  double lambda = 1.0;           // interaction strength; the 2D path runs lambda = 1
  double tau_drag = 0.5;         // drag relaxation time tau_D
  double tau_friction = 0.05;    // ground friction time tau_F
  double plunge_depth = 0.05;    // h_f
  double friction_exponent = 1.0; // beta
  double rho_max = 4.0;          // maximum packing density rho0
  double piece_length = 0.05;    // characteristic debris length ell

  void validate() const {
    if (!(lambda >= 0.0 && lambda <= 1.0))
      throw ValidationError("debris: lambda must lie in [0,1]");
    if (!(tau_drag > 0.0)) throw ValidationError("debris: tau_drag must be > 0");
    if (!(tau_friction > 0.0)) throw ValidationError("debris: tau_friction must be > 0");
    if (!(plunge_depth > 0.0)) throw ValidationError("debris: plunge_depth must be > 0");
    if (!(friction_exponent > 0.0)) throw ValidationError("debris: friction_exponent must be > 0");
    if (!(rho_max > 0.0)) throw ValidationError("debris: rho_max must be > 0");
    if (!(piece_length > 0.0)) throw ValidationError("debris: piece_length must be > 0");
  }
};

// Conservative debris state for the lambda = 1 model: density and
// m = rho^2 * v (two components).
struct DebrisField {
  Grid2D grid;
  std::vector<double> rho, mx, my;

  DebrisField() = default;
  explicit DebrisField(const Grid2D& g)
      : grid(g), rho(g.cells(), 0.0), mx(g.cells(), 0.0), my(g.cells(), 0.0) {}
};

// Ground friction relaxation rate per unit mass,
// (1/tau_F) max(1, h_f/h) max(0, 1 - h/h_f)^beta; zero for h >= h_f.
double friction_rate(double h, const DebrisParams& params);

// Exact solution of the frozen-coefficient drag+friction ODE over dt.
double debris_source_update(double v, double u_water, double h, double dt,
                            const DebrisParams& params);

// v = rho^2 m / (rho^4 + eps): the Tykhonov blend with a zero vacuum target.
inline double recover_velocity(double rho, double m, double eps) {
  const double r2 = rho * rho;
  return (r2 * m) / (r2 * r2 + eps);
}

void velocity_fields(const DebrisField& state, double eps, std::vector<double>& vx,
                     std::vector<double>& vy);

// One upwind Lagrange-flux step of the lambda = 1 conservative system
//   d_t rho + div(rho v) = 0,   d_t(rho^2 v) + div(rho^2 v x v) = 0,
// with the same outflow clamp as the water solver. Sources are applied
// separately by apply_source.
DebrisField convective_step(const DebrisField& state, const BoundarySet& bcs, double eps,
                            double dt);

// Pointwise drag/friction relaxation toward the water velocity (exact
// exponential integrator), applied to the recovered velocity.
void apply_source(DebrisField& state, const std::vector<double>& h,
                  const std::vector<double>& u_water_x, const std::vector<double>& u_water_y,
                  const DebrisParams& params, double eps, double dt);

// I = -lambda rho (div v) v per cell, central differences on interior cells,
// zero on boundary cells. General-lambda library piece, exercised in 1D tests.
void interaction_term_2d(const Grid2D& grid, const std::vector<double>& rho,
                         const std::vector<double>& vx, const std::vector<double>& vy,
                         double lambda, std::vector<double>& ax, std::vector<double>& ay);

double max_speed(const DebrisField& state, double eps);
double total_mass(const DebrisField& state);

// lambda = 0 reference variant (pressureless gas dynamics, m = rho*v),
// used by 1D regularization studies.
struct Pressureless1D {
  Grid2D grid;
  std::vector<double> rho, m;

  Pressureless1D() = default;
  explicit Pressureless1D(const Grid2D& g) : grid(g), rho(g.cells(), 0.0), m(g.cells(), 0.0) {}
};

Pressureless1D pressureless_step(const Pressureless1D& state, BoundaryKind left,
                                 BoundaryKind right, double eps, double dt);

} // namespace floodsim::debris
