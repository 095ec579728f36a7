#include "floodsim/writers.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace floodsim::io {

void OutputFrame::check() const {
  const std::size_t n = grid.cells();
  auto expect = [&](const std::vector<double>& v, const char* name) {
    if (v.size() != n)
      throw DimensionMismatch(std::string("frame field ") + name + " has " +
                              std::to_string(v.size()) + " values, expected " + std::to_string(n));
    for (std::size_t c = 0; c < v.size(); ++c)
      if (!std::isfinite(v[c]))
        throw NonFiniteValue(std::string("frame field ") + name + " non-finite at cell " +
                             std::to_string(c));
  };
  expect(h, "h");
  expect(hu, "hu");
  expect(hv, "hv");
  expect(z, "z");
  expect(rho_d, "rho_d");
  expect(vdx, "vdx");
  expect(vdy, "vdy");
  expect(D, "D");
  if (has_damage_vector) {
    expect(Dx, "Dx");
    expect(Dy, "Dy");
  }
}

namespace {

void print17(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

} // namespace

void write_frame_csv(const OutputFrame& frame, const std::string& path) {
  frame.check();
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "x,y,h,hu,hv,z,rho_d,vdx,vdy,D\n";
  const Grid2D& g = frame.grid;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t c = g.idx(i, j);
      print17(out, g.cx(i));
      out << ',';
      print17(out, g.cy(j));
      for (const auto* f : {&frame.h, &frame.hu, &frame.hv, &frame.z, &frame.rho_d, &frame.vdx,
                            &frame.vdy, &frame.D}) {
        out << ',';
        print17(out, (*f)[c]);
      }
      out << '\n';
    }
  }
  if (!out) throw IoError("failed writing '" + path + "'");
}

OutputFrame read_frame_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string header;
  std::getline(in, header);
  if (header != "x,y,h,hu,hv,z,rho_d,vdx,vdy,D")
    throw ParseError("'" + path + "': unexpected CSV header '" + header + "'");

  std::vector<std::array<double, 10>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::array<double, 10> row{};
    std::istringstream ls(line);
    std::string cell;
    for (int k = 0; k < 10; ++k) {
      if (!std::getline(ls, cell, ','))
        throw ParseError("'" + path + "': short row '" + line + "'");
      row[k] = std::strtod(cell.c_str(), nullptr);
    }
    rows.push_back(row);
  }

  // Infer the grid: nx = number of distinct leading x values in the first row block.
  std::size_t nx = 0;
  for (; nx < rows.size(); ++nx)
    if (nx > 0 && rows[nx][0] <= rows[nx - 1][0]) break;
  if (nx == 0 || rows.size() % nx != 0)
    throw ParseError("'" + path + "': rows do not form a rectangular grid");
  const std::size_t ny = rows.size() / nx;

  const double dx = nx > 1 ? rows[1][0] - rows[0][0] : 1.0;
  const double dy = ny > 1 ? rows[nx][1] - rows[0][1] : 1.0;
  OutputFrame fr;
  fr.grid = Grid2D::make(static_cast<int>(nx), static_cast<int>(ny), rows[0][0] - 0.5 * dx,
                         rows[0][1] - 0.5 * dy, rows[0][0] + (nx - 0.5) * dx,
                         rows[0][1] + (ny - 0.5) * dy);
  const std::size_t n = rows.size();
  fr.h.resize(n);
  fr.hu.resize(n);
  fr.hv.resize(n);
  fr.z.resize(n);
  fr.rho_d.resize(n);
  fr.vdx.resize(n);
  fr.vdy.resize(n);
  fr.D.resize(n);
  for (std::size_t c = 0; c < n; ++c) {
    fr.h[c] = rows[c][2];
    fr.hu[c] = rows[c][3];
    fr.hv[c] = rows[c][4];
    fr.z[c] = rows[c][5];
    fr.rho_d[c] = rows[c][6];
    fr.vdx[c] = rows[c][7];
    fr.vdy[c] = rows[c][8];
    fr.D[c] = rows[c][9];
  }
  return fr;
}

void write_frame_vtk(const OutputFrame& frame, const std::string& path) {
  frame.check();
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  const Grid2D& g = frame.grid;

  out << "# vtk DataFile Version 3.0\n";
  out << "floodsim frame step " << frame.step << " t " << frame.t << "\n";
  out << "ASCII\n";
  out << "DATASET STRUCTURED_POINTS\n";
  out << "DIMENSIONS " << g.nx + 1 << " " << g.ny + 1 << " 1\n";
  out << "ORIGIN " << g.x0 << " " << g.y0 << " 0\n";
  out << "SPACING " << g.dx << " " << g.dy << " 1\n";
  out << "CELL_DATA " << g.cells() << "\n";

  auto scalars = [&](const char* name, const std::vector<double>& v) {
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (std::size_t c = 0; c < v.size(); ++c) {
      print17(out, v[c]);
      out << '\n';
    }
  };
  scalars("h", frame.h);
  scalars("z", frame.z);
  scalars("rho_d", frame.rho_d);
  scalars("D", frame.D);

  auto vectors = [&](const char* name, const std::vector<double>& vx,
                     const std::vector<double>& vy) {
    out << "VECTORS " << name << " double\n";
    for (std::size_t c = 0; c < vx.size(); ++c) {
      print17(out, vx[c]);
      out << ' ';
      print17(out, vy[c]);
      out << " 0\n";
    }
  };
  {
    // water velocity from conservative fields, zero where dry
    std::vector<double> wx(g.cells(), 0.0), wy(g.cells(), 0.0);
    for (std::size_t c = 0; c < g.cells(); ++c) {
      if (frame.h[c] > 0.0) {
        wx[c] = frame.hu[c] / frame.h[c];
        wy[c] = frame.hv[c] / frame.h[c];
      }
    }
    vectors("water_velocity", wx, wy);
  }
  vectors("debris_velocity", frame.vdx, frame.vdy);
  if (frame.has_damage_vector) vectors("damage_momentum", frame.Dx, frame.Dy);

  if (!out) throw IoError("failed writing '" + path + "'");
}

void write_euler_profile_csv(const std::string& path, const std::vector<double>& x,
                             const std::vector<double>& rho, const std::vector<double>& u,
                             const std::vector<double>& p) {
  if (rho.size() != x.size() || u.size() != x.size() || p.size() != x.size())
    throw DimensionMismatch("euler profile: column sizes differ");
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "x,rho,u,p\n";
  for (std::size_t i = 0; i < x.size(); ++i) {
    print17(out, x[i]);
    out << ',';
    print17(out, rho[i]);
    out << ',';
    print17(out, u[i]);
    out << ',';
    print17(out, p[i]);
    out << '\n';
  }
  if (!out) throw IoError("failed writing '" + path + "'");
}

} // namespace floodsim::io
