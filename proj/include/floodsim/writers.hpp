#pragma once

#include <string>
#include <vector>

#include "floodsim/grid.hpp"

namespace floodsim::io {

// Snapshot of all per-cell output quantities at one time.
struct OutputFrame {
  double t = 0.0;
  long step = 0;
  Grid2D grid;
  std::vector<double> h, hu, hv, z, rho_d, vdx, vdy, D;
  // Optional accumulated debris momentum vector.
  bool has_damage_vector = false;
  std::vector<double> Dx, Dy;

  void check() const; // sizes and finiteness
};

// Header "x,y,h,hu,hv,z,rho_d,vdx,vdy,D", one row per cell in row-major
// order, 17 significant digits (bit round-trip for doubles).
void write_frame_csv(const OutputFrame& frame, const std::string& path);
OutputFrame read_frame_csv(const std::string& path);

// Legacy ASCII VTK STRUCTURED_POINTS with CELL_DATA blocks for h, z, rho_d,
// D plus water/debris velocity vectors.
void write_frame_vtk(const OutputFrame& frame, const std::string& path);

// Columns "x,rho,u,p" used by the shock tube fixtures.
void write_euler_profile_csv(const std::string& path, const std::vector<double>& x,
                             const std::vector<double>& rho, const std::vector<double>& u,
                             const std::vector<double>& p);

} // namespace floodsim::io
