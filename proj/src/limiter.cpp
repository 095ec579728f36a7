#include "floodsim/limiter.hpp"

namespace floodsim {

CellField muscl_reconstruct(const CellField& field, Axis axis, const LimiterParams& params) {
  params.validate();
  const Grid2D& g = field.grid;
  CellField slopes(g, 0.0);

  if (axis == Axis::X) {
    if (g.nx < 3) return slopes;
    for (int j = 0; j < g.ny; ++j) {
      for (int i = 1; i < g.nx - 1; ++i) {
        const double fwd = field.at(i + 1, j) - field.at(i, j);
        const double bwd = field.at(i, j) - field.at(i - 1, j);
        slopes.at(i, j) = sweby_limiter(fwd, bwd, params.beta) / g.dx;
      }
    }
  } else {
    if (g.ny < 3) return slopes;
    for (int j = 1; j < g.ny - 1; ++j) {
      for (int i = 0; i < g.nx; ++i) {
        const double fwd = field.at(i, j + 1) - field.at(i, j);
        const double bwd = field.at(i, j) - field.at(i, j - 1);
        slopes.at(i, j) = sweby_limiter(fwd, bwd, params.beta) / g.dy;
      }
    }
  }
  return slopes;
}

} // namespace floodsim
