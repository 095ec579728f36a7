#include "floodsim/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "floodsim/time_control.hpp"
#include "floodsim/topography_io.hpp"

namespace floodsim::sim {

void damage_accumulate(DamageField& damage, const debris::DebrisField& debris, double eps,
                       double dt) {
  for (std::size_t c = 0; c < damage.grid.cells(); ++c) {
    const double rho = debris.rho[c];
    const double vx = debris::recover_velocity(rho, debris.mx[c], eps);
    const double vy = debris::recover_velocity(rho, debris.my[c], eps);
    damage.D[c] += rho * std::hypot(vx, vy) * dt;
    if (damage.vector_enabled) {
      damage.Dx[c] += rho * vx * dt;
      damage.Dy[c] += rho * vy * dt;
    }
  }
}

namespace {

// Bilinear interpolation of a cell-centered field, clamped at the boundary.
double sample_bilinear(const Grid2D& g, const std::vector<double>& f, double x, double y) {
  double gx = (x - g.x0) / g.dx - 0.5;
  double gy = (y - g.y0) / g.dy - 0.5;
  gx = std::clamp(gx, 0.0, static_cast<double>(g.nx - 1));
  gy = std::clamp(gy, 0.0, static_cast<double>(g.ny - 1));
  const int i0 = std::min(static_cast<int>(gx), g.nx - 2 >= 0 ? g.nx - 2 : 0);
  const int j0 = std::min(static_cast<int>(gy), g.ny - 2 >= 0 ? g.ny - 2 : 0);
  const int i1 = std::min(i0 + 1, g.nx - 1);
  const int j1 = std::min(j0 + 1, g.ny - 1);
  const double fx = gx - i0;
  const double fy = gy - j0;
  const double a = f[g.idx(i0, j0)] * (1.0 - fx) + f[g.idx(i1, j0)] * fx;
  const double b = f[g.idx(i0, j1)] * (1.0 - fx) + f[g.idx(i1, j1)] * fx;
  return a * (1.0 - fy) + b * fy;
}

} // namespace

void particle_advect(ParticleSet& particles, const Grid2D& grid, const std::vector<double>& vx,
                     const std::vector<double>& vy, double dt, io::ParticleIntegrator kind) {
  for (std::size_t p = 0; p < particles.size(); ++p) {
    if (!particles.active[p]) continue;
    const Vec2 pos{particles.x[p], particles.y[p]};
    auto velocity = [&](const Vec2& q) {
      return Vec2{sample_bilinear(grid, vx, q.x, q.y), sample_bilinear(grid, vy, q.x, q.y)};
    };
    Vec2 next;
    if (kind == io::ParticleIntegrator::heun) {
      next = heun_advance(pos, velocity, dt);
    } else {
      const Vec2 v = velocity(pos);
      next = pos + dt * v;
    }
    if (next.x < grid.x0 || next.x > grid.x1 || next.y < grid.y0 || next.y > grid.y1) {
      particles.active[p] = 0;
      continue;
    }
    particles.x[p] = next.x;
    particles.y[p] = next.y;
  }
}

ParticleSet seed_particles(const Grid2D& grid, const std::vector<double>& rho, int count,
                           unsigned seed) {
  ParticleSet set;
  if (count <= 0) return set;
  const double total = std::accumulate(rho.begin(), rho.end(), 0.0);
  if (!(total > 0.0)) return set;

  // Integer share per cell, remainder to the largest fractional parts.
  const std::size_t n = grid.cells();
  std::vector<int> per_cell(n, 0);
  std::vector<std::pair<double, std::size_t>> fract;
  fract.reserve(n);
  int placed = 0;
  for (std::size_t c = 0; c < n; ++c) {
    const double want = count * rho[c] / total;
    per_cell[c] = static_cast<int>(want);
    placed += per_cell[c];
    fract.emplace_back(want - per_cell[c], c);
  }
  std::sort(fract.begin(), fract.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (int k = 0; k < count - placed && k < static_cast<int>(n); ++k)
    per_cell[fract[k].second] += 1;

  std::mt19937 rng(seed);
  // 27 random bits scaled into [0,1); avoids distribution implementation drift
  auto unit = [&rng]() { return (rng() >> 5) * (1.0 / 134217728.0); };
  set.x.reserve(count);
  set.y.reserve(count);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const int k = per_cell[grid.idx(i, j)];
      for (int q = 0; q < k; ++q) {
        set.x.push_back(grid.x0 + (i + unit()) * grid.dx);
        set.y.push_back(grid.y0 + (j + unit()) * grid.dy);
      }
    }
  }
  set.active.assign(set.x.size(), 1);
  return set;
}

double shared_max_speed(const SimulationState& state, const CoupledParams& params) {
  double s = swe::max_signal_speed(state.water, state.dry, params.swe);
  if (params.debris_enabled) {
    const double eps = params.swe.eps_blend_for(state.water.grid);
    s = std::fmax(s, debris::max_speed(state.debris, eps));
  }
  return s;
}

void coupled_step(SimulationState& state, const CoupledParams& params, double dt) {
  const Grid2D& grid = state.water.grid;
  const double eps = params.swe.eps_blend_for(grid);

  // (1) effective topography
  CellField z_eff = state.base_topography;
  if (params.coupling.kind == io::CouplingKind::two_way) {
    for (std::size_t c = 0; c < grid.cells(); ++c)
      z_eff.v[c] += params.coupling.mu_debris * state.debris.rho[c];
  }
  const swe::Topography topo = swe::Topography::build(z_eff, params.swe.boundaries);

  // (2) water advance
  state.water = swe::swe_step(state.water, topo, state.dry, params.swe, dt);

  if (params.debris_enabled) {
    // (3) debris convection
    state.debris = debris::convective_step(state.debris, params.swe.boundaries, eps, dt);

    // (4) sources from the fresh water state
    std::vector<double> ux, uy;
    swe::velocity_fields(state.water, state.dry, eps, ux, uy);
    debris::apply_source(state.debris, state.water.h, ux, uy, params.debris, eps, dt);

    // (5) damage, (6) visualization particles
    damage_accumulate(state.damage, state.debris, eps, dt);
    std::vector<double> vdx, vdy;
    debris::velocity_fields(state.debris, eps, vdx, vdy);
    particle_advect(state.particles, grid, vdx, vdy, dt, params.particle_integrator);
  }

  state.t += dt;
  state.step += 1;
}

SimulationState initial_state(const io::SimConfig& cfg) {
  const Grid2D grid = cfg.grid();
  SimulationState st;

  const swe::Topography topo = io::load_topography(cfg.topography, grid, cfg.boundaries);
  st.base_topography = CellField(grid);
  st.base_topography.v = topo.z;

  st.water = swe::SweField(grid);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const std::size_t c = grid.idx(i, j);
      double eta = cfg.water_level;
      for (const io::BoxRegion& r : cfg.water_regions)
        if (r.contains(grid.cx(i), grid.cy(j))) eta += r.value;
      st.water.h[c] = std::fmax(0.0, eta - topo.z[c]);
    }
  }

  st.dry = swe::DryVelocityField(grid);
  st.debris = debris::DebrisField(grid);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      double rho = 0.0;
      for (const io::BoxRegion& r : cfg.debris_regions)
        if (r.contains(grid.cx(i), grid.cy(j))) rho += r.value;
      st.debris.rho[grid.idx(i, j)] = rho;
    }
  }

  st.damage = DamageField(grid, cfg.write_damage_vector);
  st.particles = seed_particles(grid, st.debris.rho, cfg.particle_count, cfg.particle_seed);
  return st;
}

io::OutputFrame make_frame(const SimulationState& state, const CoupledParams& params,
                           bool with_damage_vector) {
  const Grid2D& grid = state.water.grid;
  const double eps = params.swe.eps_blend_for(grid);
  io::OutputFrame fr;
  fr.t = state.t;
  fr.step = state.step;
  fr.grid = grid;
  fr.h = state.water.h;
  fr.hu = state.water.hu;
  fr.hv = state.water.hv;
  fr.z = state.base_topography.v;
  if (params.coupling.kind == io::CouplingKind::two_way) {
    for (std::size_t c = 0; c < grid.cells(); ++c)
      fr.z[c] += params.coupling.mu_debris * state.debris.rho[c];
  }
  fr.rho_d = state.debris.rho;
  debris::velocity_fields(state.debris, eps, fr.vdx, fr.vdy);
  fr.D = state.damage.D;
  if (with_damage_vector && state.damage.vector_enabled) {
    fr.has_damage_vector = true;
    fr.Dx = state.damage.Dx;
    fr.Dy = state.damage.Dy;
  }
  return fr;
}

namespace {

CoupledParams params_from_config(const io::SimConfig& cfg) {
  CoupledParams p;
  p.swe = cfg.swe_params();
  p.debris = cfg.debris;
  p.coupling.kind = cfg.coupling_kind;
  p.coupling.mu_debris = cfg.mu_debris;
  p.debris_enabled = cfg.debris_enabled;
  p.particle_integrator = cfg.particle_integrator;
  p.cfl = cfg.cfl;
  p.dt_max = cfg.dt_max;
  return p;
}

} // namespace

RunResult run_simulation(const io::SimConfig& cfg, const FrameSink& sink) {
  cfg.validate();
  const CoupledParams params = params_from_config(cfg);
  RunResult res;
  res.state = initial_state(cfg);
  SimulationState& st = res.state;

  long last_emitted = -1;
  auto emit = [&](const SimulationState& s) {
    if (s.step == last_emitted) return;
    last_emitted = s.step;
    if (sink) sink(make_frame(s, params, cfg.write_damage_vector));
    res.frames_emitted += 1;
  };

  emit(st);
  while (st.t < cfg.t_end) {
    double dt;
    try {
      const double speed = shared_max_speed(st, params);
      dt = compute_dt_cfl(speed, st.water.grid, cfg.cfl, cfg.dt_max);
      dt = std::fmin(dt, cfg.t_end - st.t);
      coupled_step(st, params, dt);
      check_finite(st.water.h, "water depth");
      check_finite(st.water.hu, "water x-momentum");
      check_finite(st.water.hv, "water y-momentum");
      if (params.debris_enabled) check_finite(st.debris.rho, "debris density");
    } catch (const NumericsError& e) {
      throw NumericsError("step " + std::to_string(st.step) + " (t=" + std::to_string(st.t) +
                          "): " + e.what());
    }
    if (cfg.frame_every > 0 && st.step % cfg.frame_every == 0) emit(st);
  }
  emit(st);
  return res;
}

} // namespace floodsim::sim
