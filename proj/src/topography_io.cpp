#include "floodsim/topography_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

namespace floodsim::io {

CellField evaluate_analytic_topography(const std::vector<TopoFeature>& features,
                                       const Grid2D& grid) {
  CellField z(grid, 0.0);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const double x = grid.cx(i);
      const double y = grid.cy(j);
      double v = 0.0;
      for (const TopoFeature& f : features) {
        if (f.kind == FeatureKind::ramp) {
          v += f.a + f.bx * x + f.by * y;
        } else {
          const double rx = x - f.cx;
          const double ry = y - f.cy;
          v += f.amplitude * std::exp(-(rx * rx + ry * ry) / (2.0 * f.width * f.width));
        }
      }
      z.at(i, j) = v;
    }
  }
  return z;
}

CellField read_topography_file(const std::string& path, const Grid2D& grid) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open topography file '" + path + "'");
  int nx = 0, ny = 0;
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  if (!(in >> nx >> ny >> x0 >> y0 >> x1 >> y1))
    throw ParseError("topography file '" + path + "': bad header (need nx ny x0 y0 x1 y1)");
  if (nx != grid.nx || ny != grid.ny)
    throw DimensionMismatch("topography file '" + path + "': grid is " + std::to_string(nx) +
                            "x" + std::to_string(ny) + " but the configuration wants " +
                            std::to_string(grid.nx) + "x" + std::to_string(grid.ny));
  CellField z(grid, 0.0);
  for (std::size_t c = 0; c < grid.cells(); ++c) {
    if (!(in >> z.v[c]))
      throw ParseError("topography file '" + path + "': missing value at cell " +
                       std::to_string(c));
    if (!std::isfinite(z.v[c]))
      throw NonFiniteValue("topography file '" + path + "': non-finite value at cell " +
                           std::to_string(c));
  }
  return z;
}

void write_topography_file(const std::string& path, const CellField& z) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write topography file '" + path + "'");
  const Grid2D& g = z.grid;
  char buf[128];
  out << g.nx << " " << g.ny << " ";
  std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g\n", g.x0, g.y0, g.x1, g.y1);
  out << buf;
  for (std::size_t c = 0; c < g.cells(); ++c) {
    std::snprintf(buf, sizeof buf, "%.17g\n", z.v[c]);
    out << buf;
  }
  if (!out) throw IoError("failed writing topography file '" + path + "'");
}

swe::Topography load_topography(const TopographyInput& spec, const Grid2D& grid,
                                const BoundarySet& bcs) {
  CellField z = spec.kind == TopoKind::file
                    ? read_topography_file(spec.file, grid)
                    : evaluate_analytic_topography(spec.features, grid);
  for (std::size_t c = 0; c < z.v.size(); ++c)
    if (!std::isfinite(z.v[c]))
      throw NonFiniteValue("topography: non-finite elevation at cell " + std::to_string(c));
  return swe::Topography::build(z, bcs);
}

} // namespace floodsim::io
