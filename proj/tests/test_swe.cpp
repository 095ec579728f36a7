#include <doctest.h>

#include <cmath>
#include <random>

#include "floodsim/swe.hpp"
#include "floodsim/time_control.hpp"

using namespace floodsim;
using namespace floodsim::swe;

namespace {

SweParams wall_params() {
  SweParams p;
  p.boundaries = {BoundaryKind::wall, BoundaryKind::wall, BoundaryKind::wall, BoundaryKind::wall};
  return p;
}

Topography flat_topo(const Grid2D& g, const BoundarySet& bc) {
  return Topography::build(CellField(g, 0.0), bc);
}

double total_volume(const SweField& f) {
  double v = 0.0;
  for (double h : f.h) v += h;
  return v * f.grid.cell_area();
}

void advance(SweField& state, const Topography& topo, DryVelocityField& dry,
             const SweParams& params, int steps, double cfl = 0.25) {
  for (int s = 0; s < steps; ++s) {
    const double speed = max_signal_speed(state, dry, params);
    const double dt = compute_dt_cfl(speed, state.grid, cfl);
    state = swe_step(state, topo, dry, params, dt);
  }
}

} // namespace

TEST_CASE("wet riemann solver") {
  SUBCASE("lake at rest across a topography jump") {
    const double sigma = std::sqrt(9.81 * 2.0);
    const RiemannResult r = riemann_wet(2.0, 0.0, 0.0, 1.0, 0.0, 1.0, 9.81, sigma);
    CHECK(r.u_star == 0.0);
    CHECK(r.h_star == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(r.z_star == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r.h_star + r.z_star == doctest::Approx(2.0).epsilon(1e-15));
  }
  SUBCASE("identical states on a flat bed") {
    const RiemannResult r = riemann_wet(1.2, 0.7, 0.0, 1.2, 0.7, 0.0, 9.81, 4.0);
    CHECK(r.u_star == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(r.h_star == doctest::Approx(1.2).epsilon(1e-15));
  }
  SUBCASE("dam break interface values") {
    const double sigma = std::sqrt(19.62);
    const RiemannResult r = riemann_wet(2.0, 0.0, 0.0, 1.0, 0.0, 0.0, 9.81, sigma);
    CHECK(r.u_star == doctest::Approx(1.1074).epsilon(2e-4));
    CHECK(r.h_star == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(r.p_star == doctest::Approx(0.5 * 9.81 * 1.5 * 1.5).epsilon(1e-15));
  }
  SUBCASE("violated sub-characteristic guard is reported") {
    CHECK_THROWS_AS(riemann_wet(1.0, 2.0, 0.0, 1.0, -2.0, 0.0, 9.81, 1.0), DegenerateRiemann);
  }
}

TEST_CASE("sub-characteristic speed") {
  CHECK(sigma_subcharacteristic(1.0, 0.3, 1.0, 0.3, 9.81, 1e-8) ==
        doctest::Approx(std::sqrt(9.81)).epsilon(1e-15));
  // compression guard dominates for dry states
  CHECK(sigma_subcharacteristic(0.0, 1.0, 0.0, -1.0, 9.81, 1e-8) == doctest::Approx(2.0));
  // expansion contributes nothing
  CHECK(sigma_subcharacteristic(1.0, -1.0, 1.0, 1.0, 9.81, 1e-8) ==
        doctest::Approx(std::sqrt(9.81)).epsilon(1e-15));
  // floor wins for quiescent dry states
  CHECK(sigma_subcharacteristic(0.0, 0.0, 0.0, 0.0, 9.81, 1e-8) == 1e-8);
}

TEST_CASE("dry riemann velocity") {
  CHECK(riemann_dry_velocity(0.0, 1.0, 0.0, 1.0, 9.81, 3.0) == 0.0);
  CHECK(riemann_dry_velocity(0.0, 0.0, 0.0, 1.0, 9.81, 3.0) == doctest::Approx(-1.635).epsilon(1e-14));
  CHECK(riemann_dry_velocity(1.0, 0.5, 3.0, 0.5, 9.81, 3.0) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("dry formula is the wet solver with unit depths") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_real_distribution<double> z(-1.0, 1.0);
  for (int k = 0; k < 500; ++k) {
    const double ul = u(rng), ur = u(rng), zl = z(rng), zr = z(rng);
    const double sigma = sigma_subcharacteristic(1.0, ul, 1.0, ur, 9.81, 1e-8);
    const RiemannResult wet = riemann_wet(1.0, ul, zl, 1.0, ur, zr, 9.81, sigma);
    const double dry = riemann_dry_velocity(ul, zl, ur, zr, 9.81, sigma);
    CHECK(wet.u_star == doctest::Approx(dry).epsilon(1e-13));
  }
}

TEST_CASE("velocity blending") {
  // dry limit is exact for any target velocity
  for (double w : {-4.0, 0.0, 3.0})
    for (double eps : {1e-14, 1e-8, 1e-3}) CHECK(blend_velocity(0.0, 0.0, w, eps) == w);
  // wet limit recovers hu/h up to O(eps*(u_dry - u)/h^2)
  CHECK(std::fabs(blend_velocity(1.0, 2.0, 77.0, 1e-12) - 2.0) <= 1e-10);
  // intermediate value from the regularized problem
  CHECK(blend_velocity(1e-6, 0.0, 3.0, 1e-6) == doctest::Approx(2.999997).epsilon(1e-9));
}

TEST_CASE("well-balanced momentum update over a bumpy bed") {
  const Grid2D g = Grid2D::make(24, 1, 0.0, 0.0, 1.0, 1.0);
  SweParams params = wall_params();
  CellField z(g);
  for (int i = 0; i < g.nx; ++i)
    z.at(i, 0) = 0.3 * std::exp(-50.0 * (g.cx(i) - 0.5) * (g.cx(i) - 0.5));
  const Topography topo = Topography::build(z, params.boundaries);

  SweField state(g);
  for (int i = 0; i < g.nx; ++i) state.h[i] = 1.0 - z.at(i, 0);
  DryVelocityField dry(g);

  const SweField next = swe_step(state, topo, dry, params, 1e-3);
  for (int i = 0; i < g.nx; ++i) {
    CHECK(std::fabs(next.hu[i]) <= 1e-14);
    CHECK(std::fabs(next.h[i] - state.h[i]) <= 1e-14);
  }
}

TEST_CASE("flat bed at rest stays exactly at rest") {
  const Grid2D g = Grid2D::make(10, 10, 0.0, 0.0, 1.0, 1.0);
  SweParams params = wall_params();
  const Topography topo = flat_topo(g, params.boundaries);
  SweField state(g);
  for (double& h : state.h) h = 0.7;
  DryVelocityField dry(g);
  const SweField next = swe_step(state, topo, dry, params, 1e-3);
  for (std::size_t c = 0; c < g.cells(); ++c) {
    CHECK(next.h[c] == 0.7);
    CHECK(next.hu[c] == 0.0);
    CHECK(next.hv[c] == 0.0);
  }
}

TEST_CASE("2d lake at rest over a gaussian bump holds for 1000 steps") {
  const Grid2D g = Grid2D::make(40, 40, 0.0, 0.0, 1.0, 1.0);
  SweParams params = wall_params();
  CellField z(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double dx = g.cx(i) - 0.5, dy = g.cy(j) - 0.5;
      z.at(i, j) = 0.4 * std::exp(-(dx * dx + dy * dy) / 0.02);
    }
  const Topography topo = Topography::build(z, params.boundaries);
  SweField state(g);
  for (std::size_t c = 0; c < g.cells(); ++c) state.h[c] = 1.0 - z.v[c];
  DryVelocityField dry(g);

  advance(state, topo, dry, params, 1000);
  double dev = 0.0, mom = 0.0;
  for (std::size_t c = 0; c < g.cells(); ++c) {
    dev = std::fmax(dev, std::fabs(state.h[c] + z.v[c] - 1.0));
    mom = std::fmax(mom, std::fmax(std::fabs(state.hu[c]), std::fabs(state.hv[c])));
  }
  CHECK(dev <= 1e-12);
  CHECK(mom <= 1e-12);
}

TEST_CASE("lake at rest around an emerged island") {
  const Grid2D g = Grid2D::make(30, 30, 0.0, 0.0, 1.0, 1.0);
  SweParams params = wall_params();
  CellField z(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double dx = g.cx(i) - 0.5, dy = g.cy(j) - 0.5;
      z.at(i, j) = 1.5 * std::exp(-(dx * dx + dy * dy) / 0.02); // peaks above the surface
    }
  const Topography topo = Topography::build(z, params.boundaries);
  SweField state(g);
  for (std::size_t c = 0; c < g.cells(); ++c) state.h[c] = std::fmax(0.0, 1.0 - z.v[c]);
  DryVelocityField dry(g);

  advance(state, topo, dry, params, 500);
  double dev = 0.0, mom = 0.0;
  for (std::size_t c = 0; c < g.cells(); ++c) {
    if (state.h[c] > params.wetdry.h_wet)
      dev = std::fmax(dev, std::fabs(state.h[c] + z.v[c] - 1.0));
    mom = std::fmax(mom, std::fmax(std::fabs(state.hu[c]), std::fabs(state.hv[c])));
    if (z.v[c] > 1.0) CHECK(state.h[c] == 0.0); // dry summit stays dry
  }
  CHECK(dev <= 1e-12);
  CHECK(mom <= 1e-12);
}

TEST_CASE("an entirely dry slope stays dry") {
  const Grid2D g = Grid2D::make(50, 1, 0.0, 0.0, 10.0, 1.0);
  SweParams params = wall_params();
  CellField z(g);
  for (int i = 0; i < g.nx; ++i) z.at(i, 0) = 0.2 * g.cx(i);
  const Topography topo = Topography::build(z, params.boundaries);
  SweField state(g); // h = 0 everywhere
  DryVelocityField dry(g);
  for (int s = 0; s < 200; ++s) state = swe_step(state, topo, dry, params, 1e-3);
  for (std::size_t c = 0; c < g.cells(); ++c) {
    CHECK(state.h[c] == 0.0);
    CHECK(std::isfinite(dry.ux[c]));
  }
}

TEST_CASE("wall-bounded splash conserves volume to machine precision") {
  const Grid2D g = Grid2D::make(24, 24, 0.0, 0.0, 1.0, 1.0);
  SweParams params = wall_params();
  const Topography topo = flat_topo(g, params.boundaries);
  SweField state(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double dx = g.cx(i) - 0.3, dy = g.cy(j) - 0.4;
      state.h[g.idx(i, j)] = 0.5 + std::exp(-(dx * dx + dy * dy) / 0.01);
    }
  DryVelocityField dry(g);
  const double before = total_volume(state);
  advance(state, topo, dry, params, 400);
  CHECK(std::fabs(total_volume(state) - before) <= 1e-12 * before);
}

TEST_CASE("radially symmetric dam break keeps 90-degree rotation symmetry") {
  const int N = 32;
  const Grid2D g = Grid2D::make(N, N, -1.0, -1.0, 1.0, 1.0);
  SweParams params = wall_params();
  const Topography topo = flat_topo(g, params.boundaries);
  SweField state(g);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) {
      const double r2 = g.cx(i) * g.cx(i) + g.cy(j) * g.cy(j);
      state.h[g.idx(i, j)] = r2 < 0.25 ? 1.0 : 0.5;
    }
  DryVelocityField dry(g);
  advance(state, topo, dry, params, 100);

  // rotation (x,y) -> (-y,x) maps cell (i,j) to (N-1-j, i)
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) {
      const std::size_t c = g.idx(i, j);
      const std::size_t r = g.idx(N - 1 - j, i);
      CHECK(state.h[r] == doctest::Approx(state.h[c]).epsilon(1e-10));
      CHECK(state.hu[r] == doctest::Approx(-state.hv[c]).epsilon(1e-10));
      CHECK(state.hv[r] == doctest::Approx(state.hu[c]).epsilon(1e-10));
    }
}

TEST_CASE("wet dam break self-converges at first order") {
  auto run = [](int cells) {
    const Grid2D g = Grid2D::make(cells, 1, 0.0, 0.0, 10.0, 1.0);
    SweParams params = wall_params();
    const Topography topo = flat_topo(g, params.boundaries);
    SweField state(g);
    for (int i = 0; i < cells; ++i) state.h[i] = g.cx(i) < 5.0 ? 2.0 : 1.0;
    DryVelocityField dry(g);
    double t = 0.0;
    const double t_end = 0.5;
    while (t < t_end) {
      const double speed = max_signal_speed(state, dry, params);
      double dt = compute_dt_cfl(speed, g, 0.25);
      dt = std::fmin(dt, t_end - t);
      state = swe_step(state, topo, dry, params, dt);
      t += dt;
    }
    return state;
  };

  const SweField ref = run(800);
  auto l1_error = [&](const SweField& coarse) {
    const int factor = 800 / coarse.grid.nx;
    double err = 0.0;
    for (int i = 0; i < coarse.grid.nx; ++i) {
      double avg = 0.0;
      for (int k = 0; k < factor; ++k) avg += ref.h[i * factor + k];
      avg /= factor;
      err += std::fabs(coarse.h[i] - avg) * coarse.grid.dx;
    }
    return err;
  };

  const double e100 = l1_error(run(100));
  const double e200 = l1_error(run(200));
  const double order = std::log2(e100 / e200);
  CHECK(order >= 0.8);
}

TEST_CASE("dry velocity advance") {
  SUBCASE("flat ground with zero velocities stays zero") {
    const Grid2D g = Grid2D::make(10, 1, 0.0, 0.0, 1.0, 1.0);
    SweParams params;
    params.boundaries = {BoundaryKind::outflow, BoundaryKind::outflow, BoundaryKind::wall,
                         BoundaryKind::wall};
    const Topography topo = flat_topo(g, params.boundaries);
    SweField water(g);
    for (double& h : water.h) h = 1.0;
    DryVelocityField dry(g);
    std::vector<double> u0(g.cells(), 0.0), v0(g.cells(), 0.0);
    dry_velocity_advance(dry, u0, v0, water, topo, params, 1e-3);
    for (std::size_t c = 0; c < g.cells(); ++c) {
      CHECK(dry.ux[c] == 0.0);
      CHECK(dry.uy[c] == 0.0);
      CHECK(dry.eta[c] == doctest::Approx(1.0).epsilon(1e-15));
    }
  }
  SUBCASE("uniform slope accelerates a resting dry field by -g dz/dx dt") {
    const Grid2D g = Grid2D::make(11, 1, 0.0, 0.0, 11.0, 1.0);
    SweParams params;
    params.boundaries = {BoundaryKind::outflow, BoundaryKind::outflow, BoundaryKind::wall,
                         BoundaryKind::wall};
    CellField z(g);
    const double slope = 0.05;
    for (int i = 0; i < g.nx; ++i) z.at(i, 0) = slope * g.cx(i);
    const Topography topo = Topography::build(z, params.boundaries);
    SweField water(g); // dry everywhere
    DryVelocityField dry(g);
    std::vector<double> u0(g.cells(), 0.0), v0(g.cells(), 0.0);
    const double dt = 2e-3;
    dry_velocity_advance(dry, u0, v0, water, topo, params, dt);
    // interior cells see the uniform gravity increment regardless of mu
    CHECK(dry.ux[5] == doctest::Approx(-9.81 * slope * dt).epsilon(1e-12));
    CHECK(dry.eta[5] == doctest::Approx(1.0).epsilon(1e-13));
  }
  SUBCASE("matching water velocity is a fixed point") {
    const Grid2D g = Grid2D::make(12, 1, 0.0, 0.0, 1.0, 1.0);
    SweParams params;
    params.boundaries = {BoundaryKind::outflow, BoundaryKind::outflow, BoundaryKind::wall,
                         BoundaryKind::wall};
    const Topography topo = flat_topo(g, params.boundaries);
    const double U = 0.37;
    SweField water(g);
    for (std::size_t c = 0; c < g.cells(); ++c) {
      water.h[c] = 1.0;
      water.hu[c] = U;
    }
    DryVelocityField dry(g);
    for (double& u : dry.ux) u = U;
    std::vector<double> u0(g.cells(), U), v0(g.cells(), 0.0);
    dry_velocity_advance(dry, u0, v0, water, topo, params, 1e-3);
    for (std::size_t c = 0; c < g.cells(); ++c)
      CHECK(dry.ux[c] == doctest::Approx(U).epsilon(1e-13));
  }
}

TEST_CASE("energy diagnostic") {
  const Grid2D g = Grid2D::make(4, 1, 0.0, 0.0, 4.0, 1.0);
  SweField state(g); // all dry
  CHECK(energy_total(state, 9.81, 1e-12) == 0.0);

  for (double& h : state.h) h = 2.0;
  // per unit cell: g h^2 / 2 = 19.62
  const CellField e = energy_per_cell(state, 9.81, 1e-12);
  for (double v : e.v) CHECK(v == doctest::Approx(19.62).epsilon(1e-13));
}

TEST_CASE("closed dam break dissipates energy monotonically") {
  const Grid2D g = Grid2D::make(100, 1, 0.0, 0.0, 10.0, 1.0);
  SweParams params = wall_params();
  const Topography topo = flat_topo(g, params.boundaries);
  SweField state(g);
  for (int i = 0; i < g.nx; ++i) state.h[i] = g.cx(i) < 5.0 ? 2.0 : 1.0;
  DryVelocityField dry(g);

  double prev = energy_total(state, params.gravity, 1e-12);
  for (int s = 0; s < 300; ++s) {
    const double dt = compute_dt_cfl(max_signal_speed(state, dry, params), g, 0.25);
    state = swe_step(state, topo, dry, params, dt);
    const double e = energy_total(state, params.gravity, 1e-12);
    CHECK(e <= prev * (1.0 + 1e-8));
    prev = e;
  }
}

TEST_CASE("dam break onto a dry beach keeps depth non-negative") {
  const Grid2D g = Grid2D::make(200, 1, 0.0, 0.0, 10.0, 1.0);
  SweParams params = wall_params();
  CellField z(g);
  for (int i = 0; i < g.nx; ++i) z.at(i, 0) = std::fmax(0.0, 0.05 * (g.cx(i) - 4.0));
  const Topography topo = Topography::build(z, params.boundaries);
  SweField state(g);
  for (int i = 0; i < g.nx; ++i) state.h[i] = g.cx(i) < 2.0 ? 1.0 : 0.0;
  DryVelocityField dry(g);

  for (int s = 0; s < 500; ++s) {
    const double dt = compute_dt_cfl(max_signal_speed(state, dry, params), g, 0.25);
    state = swe_step(state, topo, dry, params, dt);
    for (double h : state.h) {
      CHECK(h >= 0.0);
      CHECK(std::isfinite(h));
    }
  }
}
