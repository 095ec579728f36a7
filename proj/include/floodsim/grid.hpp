#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "floodsim/errors.hpp"

namespace floodsim {

// Axis-aligned structured grid of nx*ny cells, row-major storage order.
struct Grid2D {
  int nx = 1;
  int ny = 1;
  double x0 = 0.0, y0 = 0.0;
  double x1 = 1.0, y1 = 1.0;
  double dx = 1.0, dy = 1.0;

  static Grid2D make(int nx, int ny, double x0, double y0, double x1, double y1) {
    if (nx < 1 || ny < 1)
      throw ValidationError("grid: nx and ny must be >= 1");
    if (!(x1 > x0) || !(y1 > y0))
      throw ValidationError("grid: domain bounds must satisfy x1 > x0 and y1 > y0");
    Grid2D g;
    g.nx = nx;
    g.ny = ny;
    g.x0 = x0;
    g.y0 = y0;
    g.x1 = x1;
    g.y1 = y1;
    g.dx = (x1 - x0) / nx;
    g.dy = (y1 - y0) / ny;
    return g;
  }

  std::size_t cells() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }

  double cx(int i) const { return x0 + (i + 0.5) * dx; }
  double cy(int j) const { return y0 + (j + 0.5) * dy; }

  double cell_area() const { return dx * dy; }
  double min_spacing() const { return ny > 1 ? std::fmin(dx, dy) : dx; }

  bool operator==(const Grid2D&) const = default;
};

// One scalar per cell, row-major, sized nx*ny.
struct CellField {
  Grid2D grid;
  std::vector<double> v;

  CellField() = default;
  explicit CellField(const Grid2D& g, double value = 0.0) : grid(g), v(g.cells(), value) {}

  double& at(int i, int j) { return v[grid.idx(i, j)]; }
  double at(int i, int j) const { return v[grid.idx(i, j)]; }
  void fill(double value) { v.assign(grid.cells(), value); }

  bool operator==(const CellField&) const = default;
};

// Throws NonFiniteState naming the first offending index.
void check_finite(const std::vector<double>& values, const std::string& what);

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }

} // namespace floodsim
