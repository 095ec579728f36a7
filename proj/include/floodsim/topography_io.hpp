#pragma once

#include <string>

#include "floodsim/config.hpp"
#include "floodsim/swe.hpp"

namespace floodsim::io {

// Evaluates an analytic spec at cell centers or reads a gridded file, then
// builds per-face values (interior faces are arithmetic means of neighbors).
swe::Topography load_topography(const TopographyInput& spec, const Grid2D& grid,
                                const BoundarySet& bcs);

CellField evaluate_analytic_topography(const std::vector<TopoFeature>& features,
                                       const Grid2D& grid);

// Gridded file format: one header line "nx ny x0 y0 x1 y1", then nx*ny
// elevation values in row-major order, whitespace separated.
CellField read_topography_file(const std::string& path, const Grid2D& grid);
void write_topography_file(const std::string& path, const CellField& z);

} // namespace floodsim::io
