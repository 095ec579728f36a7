#pragma once

#include <cmath>
#include <vector>

#include "floodsim/boundary.hpp"
#include "floodsim/grid.hpp"

namespace floodsim::swe {

struct WetDryParams {
  double h_wet = 1e-6;     // wet/dry branch threshold depth
  double eps_blend = 1e-12; // Tykhonov regularization weight
  double mu_relax = 1e-4;   // dry-velocity relaxation time

  void validate() const {
    if (!(h_wet > 0.0)) throw ValidationError("wetdry: h_wet must be > 0");
    if (!(eps_blend > 0.0)) throw ValidationError("wetdry: eps_blend must be > 0");
    if (!(mu_relax > 0.0)) throw ValidationError("wetdry: mu_relax must be > 0");
  }
};

struct SweParams {
  double gravity = 9.81;
  double h_ref = 1.0;            // reference depth for thresholds and floors
  double sigma_floor_rel = 1e-8; // floor on sigma, relative to sqrt(g*h_ref)
  bool eps_kurganov = false;     // per-cell eps = max(eps_blend, dx^4)
  WetDryParams wetdry;
  BoundarySet boundaries;

  double sigma_floor() const { return sigma_floor_rel * std::sqrt(gravity * h_ref); }
  double eps_blend_for(const Grid2D& g) const {
    if (!eps_kurganov) return wetdry.eps_blend;
    const double d = g.min_spacing();
    return std::fmax(wetdry.eps_blend, d * d * d * d);
  }
};

// Conservative water state: depth and depth-momentum per cell.
struct SweField {
  Grid2D grid;
  std::vector<double> h, hu, hv;

  SweField() = default;
  explicit SweField(const Grid2D& g)
      : grid(g), h(g.cells(), 0.0), hu(g.cells(), 0.0), hv(g.cells(), 0.0) {}
};

// Cell-centered bed elevation plus per-face values. Interior faces carry the
// arithmetic mean of the adjacent cells; boundary faces follow the edge kind.
struct Topography {
  Grid2D grid;
  std::vector<double> z;       // nx*ny
  std::vector<double> zface_x; // (nx+1)*ny
  std::vector<double> zface_y; // nx*(ny+1)

  static Topography build(const CellField& z_cells, const BoundarySet& bcs);

  std::size_t xface(int fi, int j) const { return static_cast<std::size_t>(j) * (grid.nx + 1) + fi; }
  std::size_t yface(int i, int fj) const { return static_cast<std::size_t>(fj) * grid.nx + i; }
};

// Auxiliary velocity carried through dry regions; eta is the unit-density
// renormalization field, reset to one at the start of every advance.
struct DryVelocityField {
  Grid2D grid;
  std::vector<double> eta, ux, uy;

  DryVelocityField() = default;
  explicit DryVelocityField(const Grid2D& g)
      : grid(g), eta(g.cells(), 1.0), ux(g.cells(), 0.0), uy(g.cells(), 0.0) {}
};

struct RiemannResult {
  double u_star = 0.0;
  double h_star = 0.0;
  double p_star = 0.0;
  double z_star = 0.0;
};

// sigma = max(sqrt(g hL), sqrt(g hR), -(uR-uL)_-, floor).
double sigma_subcharacteristic(double h_left, double u_left, double h_right, double u_right,
                               double gravity, double sigma_floor);

// Wet-wet acoustic solver with mean-topography pseudo pressure.
RiemannResult riemann_wet(double h_left, double u_left, double z_left, double h_right,
                          double u_right, double z_right, double gravity, double sigma);

// Dry-dry interface velocity; the wet formula with unit depths.
double riemann_dry_velocity(double u_left, double z_left, double u_right, double z_right,
                            double gravity, double sigma);

// Velocity from the Tykhonov-regularized problem: (h*hu + eps*u_dry)/(h^2 + eps).
// The dry limit returns u_dry exactly.
inline double blend_velocity(double h, double hu, double u_dry, double eps_blend) {
  if (h == 0.0) return u_dry;
  return (h * hu + eps_blend * u_dry) / (h * h + eps_blend);
}

// Blended velocity components for every cell.
void velocity_fields(const SweField& water, const DryVelocityField& dry, double eps_blend,
                     std::vector<double>& ux, std::vector<double>& uy);

// One forward-Euler Lagrange-flux step: per-axis Riemann solves, upwind
// convective fluxes, well-balanced pressure/source update, positivity
// clamping, then dry-velocity advance and momentum zeroing below h_wet.
SweField swe_step(const SweField& state, const Topography& topo, DryVelocityField& dry,
                  const SweParams& params, double dt);

// Transport + gravity advance of (eta, eta*u_dry), then implicit exponential
// relaxation toward the blended velocity of the updated water state.
void dry_velocity_advance(DryVelocityField& dry, const std::vector<double>& ux0,
                          const std::vector<double>& uy0, const SweField& water_new,
                          const Topography& topo, const SweParams& params, double dt);

double max_signal_speed(const SweField& state, const DryVelocityField& dry,
                        const SweParams& params);

// E = h|u|^2/2 + g h^2/2 per cell; diagnostic only.
CellField energy_per_cell(const SweField& state, double gravity, double eps_blend);
double energy_total(const SweField& state, double gravity, double eps_blend);

} // namespace floodsim::swe
