#include "floodsim/swe.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "floodsim/threading.hpp"

namespace floodsim::swe {

Topography Topography::build(const CellField& z_cells, const BoundarySet& bcs) {
  bcs.validate();
  const Grid2D& g = z_cells.grid;
  Topography t;
  t.grid = g;
  t.z = z_cells.v;
  t.zface_x.assign(static_cast<std::size_t>(g.nx + 1) * g.ny, 0.0);
  t.zface_y.assign(static_cast<std::size_t>(g.nx) * (g.ny + 1), 0.0);

  for (int j = 0; j < g.ny; ++j) {
    t.zface_x[t.xface(0, j)] = bcs.left == BoundaryKind::periodic
                                   ? 0.5 * (z_cells.at(g.nx - 1, j) + z_cells.at(0, j))
                                   : z_cells.at(0, j);
    for (int fi = 1; fi < g.nx; ++fi)
      t.zface_x[t.xface(fi, j)] = 0.5 * (z_cells.at(fi - 1, j) + z_cells.at(fi, j));
    t.zface_x[t.xface(g.nx, j)] = bcs.right == BoundaryKind::periodic
                                      ? 0.5 * (z_cells.at(g.nx - 1, j) + z_cells.at(0, j))
                                      : z_cells.at(g.nx - 1, j);
  }
  for (int i = 0; i < g.nx; ++i) {
    t.zface_y[t.yface(i, 0)] = bcs.bottom == BoundaryKind::periodic
                                   ? 0.5 * (z_cells.at(i, g.ny - 1) + z_cells.at(i, 0))
                                   : z_cells.at(i, 0);
    for (int fj = 1; fj < g.ny; ++fj)
      t.zface_y[t.yface(i, fj)] = 0.5 * (z_cells.at(i, fj - 1) + z_cells.at(i, fj));
    t.zface_y[t.yface(i, g.ny)] = bcs.top == BoundaryKind::periodic
                                      ? 0.5 * (z_cells.at(i, g.ny - 1) + z_cells.at(i, 0))
                                      : z_cells.at(i, g.ny - 1);
  }
  return t;
}

double sigma_subcharacteristic(double h_left, double u_left, double h_right, double u_right,
                               double gravity, double sigma_floor) {
  const double c = std::fmax(std::sqrt(gravity * h_left), std::sqrt(gravity * h_right));
  const double compression = std::fmax(0.0, -(u_right - u_left));
  return std::fmax(std::fmax(c, compression), sigma_floor);
}

RiemannResult riemann_wet(double h_left, double u_left, double z_left, double h_right,
                          double u_right, double z_right, double gravity, double sigma) {
  const double kappa = 1.0 + (u_right - u_left) / (2.0 * sigma);
  if (!(kappa > 0.0))
    throw DegenerateRiemann("swe riemann: compressibility denominator " + std::to_string(kappa) +
                            " <= 0 (sigma too small)");
  RiemannResult r;
  r.z_star = 0.5 * (z_left + z_right);
  r.u_star = (h_left * u_left + h_right * u_right) / (h_left + h_right) -
             gravity * ((h_right + z_right) - (h_left + z_left)) / (2.0 * sigma);
  r.h_star = 0.5 * (h_left + h_right) / kappa;
  r.p_star = 0.5 * gravity * r.h_star * r.h_star;
  return r;
}

double riemann_dry_velocity(double u_left, double z_left, double u_right, double z_right,
                            double gravity, double sigma) {
  return 0.5 * (u_left + u_right) - gravity * (z_right - z_left) / (2.0 * sigma);
}

void velocity_fields(const SweField& water, const DryVelocityField& dry, double eps_blend,
                     std::vector<double>& ux, std::vector<double>& uy) {
  const std::size_t n = water.grid.cells();
  ux.resize(n);
  uy.resize(n);
  for (std::size_t c = 0; c < n; ++c) {
    ux[c] = blend_velocity(water.h[c], water.hu[c], dry.ux[c], eps_blend);
    uy[c] = blend_velocity(water.h[c], water.hv[c], dry.uy[c], eps_blend);
  }
}

namespace {

struct FaceSide {
  double h = 0.0;
  double un = 0.0; // normal velocity
  double z = 0.0;
  double qn = 0.0; // conservative normal momentum
  double qt = 0.0; // conservative transverse momentum
  std::int64_t cell = -1;
};

struct FaceOut {
  double phi_h = 0.0;
  double phi_qn = 0.0;
  double phi_qt = 0.0;
  double h_star = 0.0;
  double s = 0.0; // h_star + z_face
  std::int64_t donor = -1;
};

// Wet/dry interface solve. z_face is the precomputed face topography; it is
// overridden when a dry bank reflects the wet side.
FaceOut solve_face(FaceSide L, FaceSide R, double z_face, const SweParams& P) {
  const double g = P.gravity;
  const double h_wet = P.wetdry.h_wet;
  FaceOut out;

  double ustar, hstar;
  if (L.h + R.h < 2.0 * h_wet) {
    const double sigma =
        sigma_subcharacteristic(P.h_ref, L.un, P.h_ref, R.un, g, P.sigma_floor());
    ustar = riemann_dry_velocity(L.un, L.z, R.un, R.z, g, sigma);
    hstar = 0.5 * (L.h + R.h) / (1.0 + (R.un - L.un) / (2.0 * sigma));
  } else {
    // A dry cell whose bed sits above the neighbor surface acts as a wall.
    if (R.h < h_wet && R.z >= L.h + L.z) {
      R = {L.h, -L.un, L.z, -L.qn, L.qt, -1};
      z_face = L.z;
    } else if (L.h < h_wet && L.z >= R.h + R.z) {
      L = {R.h, -R.un, R.z, -R.qn, R.qt, -1};
      z_face = R.z;
    }
    const double sigma = sigma_subcharacteristic(L.h, L.un, R.h, R.un, g, P.sigma_floor());
    const RiemannResult rr = riemann_wet(L.h, L.un, L.z, R.h, R.un, R.z, g, sigma);
    ustar = rr.u_star;
    hstar = rr.h_star;
  }

  out.h_star = hstar;
  out.s = hstar + z_face;
  if (ustar > 0.0) {
    out.phi_h = L.h * ustar;
    out.phi_qn = L.qn * ustar;
    out.phi_qt = L.qt * ustar;
    out.donor = L.cell;
  } else if (ustar < 0.0) {
    out.phi_h = R.h * ustar;
    out.phi_qn = R.qn * ustar;
    out.phi_qt = R.qt * ustar;
    out.donor = R.cell;
  }
  return out;
}

struct FaceArrays {
  std::vector<double> phi_h, phi_hu, phi_hv, h_star, s;
  std::vector<std::int64_t> donor;

  void resize(std::size_t n) {
    phi_h.assign(n, 0.0);
    phi_hu.assign(n, 0.0);
    phi_hv.assign(n, 0.0);
    h_star.assign(n, 0.0);
    s.assign(n, 0.0);
    donor.assign(n, -1);
  }
};

} // namespace

SweField swe_step(const SweField& state, const Topography& topo, DryVelocityField& dry,
                  const SweParams& params, double dt) {
  const Grid2D& g = state.grid;
  const int nx = g.nx, ny = g.ny;
  const double eps = params.eps_blend_for(g);
  const BoundarySet& bc = params.boundaries;

  std::vector<double> ux, uy;
  velocity_fields(state, dry, eps, ux, uy);

  auto side_of = [&](int i, int j, bool xnormal) {
    FaceSide fs;
    const std::size_t c = g.idx(i, j);
    fs.h = state.h[c];
    fs.z = topo.z[c];
    fs.cell = static_cast<std::int64_t>(c);
    if (xnormal) {
      fs.un = ux[c];
      fs.qn = state.hu[c];
      fs.qt = state.hv[c];
    } else {
      fs.un = uy[c];
      fs.qn = state.hv[c];
      fs.qt = state.hu[c];
    }
    return fs;
  };

  auto mirror = [](FaceSide fs) {
    fs.un = -fs.un;
    fs.qn = -fs.qn;
    fs.cell = -1;
    return fs;
  };

  FaceArrays fx, fy;
  fx.resize(static_cast<std::size_t>(nx + 1) * ny);
  fy.resize(static_cast<std::size_t>(nx) * (ny + 1));

  parallel_rows(ny, [&](int j0, int j1) {
    for (int j = j0; j < j1; ++j) {
      for (int fi = 0; fi <= nx; ++fi) {
        FaceSide L, R;
        if (fi == 0) {
          const FaceSide interior = side_of(0, j, true);
          L = bc.left == BoundaryKind::periodic ? side_of(nx - 1, j, true)
              : bc.left == BoundaryKind::wall   ? mirror(interior)
                                                : FaceSide{interior.h, interior.un, interior.z,
                                                           interior.qn, interior.qt, -1};
        } else {
          L = side_of(fi - 1, j, true);
        }
        if (fi == nx) {
          const FaceSide interior = side_of(nx - 1, j, true);
          R = bc.right == BoundaryKind::periodic ? side_of(0, j, true)
              : bc.right == BoundaryKind::wall   ? mirror(interior)
                                                 : FaceSide{interior.h, interior.un, interior.z,
                                                            interior.qn, interior.qt, -1};
        } else {
          R = side_of(fi, j, true);
        }
        const FaceOut o = solve_face(L, R, topo.zface_x[topo.xface(fi, j)], params);
        const std::size_t f = topo.xface(fi, j);
        fx.phi_h[f] = o.phi_h;
        fx.phi_hu[f] = o.phi_qn;
        fx.phi_hv[f] = o.phi_qt;
        fx.h_star[f] = o.h_star;
        fx.s[f] = o.s;
        fx.donor[f] = o.donor;
      }
    }
  });

  parallel_rows(ny + 1, [&](int fj0, int fj1) {
    for (int fj = fj0; fj < fj1; ++fj) {
      for (int i = 0; i < nx; ++i) {
        FaceSide L, R;
        if (fj == 0) {
          const FaceSide interior = side_of(i, 0, false);
          L = bc.bottom == BoundaryKind::periodic ? side_of(i, ny - 1, false)
              : bc.bottom == BoundaryKind::wall   ? mirror(interior)
                                                  : FaceSide{interior.h, interior.un, interior.z,
                                                             interior.qn, interior.qt, -1};
        } else {
          L = side_of(i, fj - 1, false);
        }
        if (fj == ny) {
          const FaceSide interior = side_of(i, ny - 1, false);
          R = bc.top == BoundaryKind::periodic ? side_of(i, 0, false)
              : bc.top == BoundaryKind::wall   ? mirror(interior)
                                               : FaceSide{interior.h, interior.un, interior.z,
                                                          interior.qn, interior.qt, -1};
        } else {
          R = side_of(i, fj, false);
        }
        const FaceOut o = solve_face(L, R, topo.zface_y[topo.yface(i, fj)], params);
        const std::size_t f = topo.yface(i, fj);
        fy.phi_h[f] = o.phi_h;
        fy.phi_hv[f] = o.phi_qn;
        fy.phi_hu[f] = o.phi_qt;
        fy.h_star[f] = o.h_star;
        fy.s[f] = o.s;
        fy.donor[f] = o.donor;
      }
    }
  });

  // Outgoing mass per cell may not exceed the available mass: per-cell scale
  // factor applied to the donor side of every flux.
  std::vector<double> alpha(g.cells(), 1.0);
  parallel_rows(ny, [&](int j0, int j1) {
    for (int j = j0; j < j1; ++j) {
      for (int i = 0; i < nx; ++i) {
        const std::size_t c = g.idx(i, j);
        const double fw = fx.phi_h[topo.xface(i, j)];
        const double fe = fx.phi_h[topo.xface(i + 1, j)];
        const double fs = fy.phi_h[topo.yface(i, j)];
        const double fn = fy.phi_h[topo.yface(i, j + 1)];
        double out = 0.0;
        if (fe > 0.0) out += fe * g.dy;
        if (fw < 0.0) out -= fw * g.dy;
        if (fn > 0.0) out += fn * g.dx;
        if (fs < 0.0) out -= fs * g.dx;
        const double budget = state.h[c] * g.cell_area();
        if (out * dt > budget) alpha[c] = budget / (out * dt);
      }
    }
  });

  auto face_alpha = [&](const std::vector<std::int64_t>& donor, std::size_t f) {
    return donor[f] >= 0 ? alpha[static_cast<std::size_t>(donor[f])] : 1.0;
  };

  SweField next(g);
  const double dtdx = dt / g.dx;
  const double dtdy = dt / g.dy;
  const double snap_tol = -1e-12 * std::fmax(params.h_ref, 1.0);

  parallel_rows(ny, [&](int j0, int j1) {
    for (int j = j0; j < j1; ++j) {
      for (int i = 0; i < nx; ++i) {
        const std::size_t c = g.idx(i, j);
        const std::size_t w = topo.xface(i, j), e = topo.xface(i + 1, j);
        const std::size_t s = topo.yface(i, j), n = topo.yface(i, j + 1);
        const double aw = face_alpha(fx.donor, w), ae = face_alpha(fx.donor, e);
        const double as = face_alpha(fy.donor, s), an = face_alpha(fy.donor, n);

        double h = state.h[c] - dtdx * (ae * fx.phi_h[e] - aw * fx.phi_h[w]) -
                   dtdy * (an * fy.phi_h[n] - as * fy.phi_h[s]);
        if (h < 0.0) {
          if (h < snap_tol)
            throw NegativeDepth("swe: negative depth " + std::to_string(h) + " at cell " +
                                std::to_string(c));
          h = 0.0;
        }

        const double hbar_x = 0.5 * (fx.h_star[w] + fx.h_star[e]);
        const double hbar_y = 0.5 * (fy.h_star[s] + fy.h_star[n]);

        double hu = state.hu[c] - dtdx * (ae * fx.phi_hu[e] - aw * fx.phi_hu[w]) -
                    dtdy * (an * fy.phi_hu[n] - as * fy.phi_hu[s]) -
                    dtdx * params.gravity * hbar_x * (fx.s[e] - fx.s[w]);
        double hv = state.hv[c] - dtdx * (ae * fx.phi_hv[e] - aw * fx.phi_hv[w]) -
                    dtdy * (an * fy.phi_hv[n] - as * fy.phi_hv[s]) -
                    dtdy * params.gravity * hbar_y * (fy.s[n] - fy.s[s]);

        if (h < params.wetdry.h_wet) {
          hu = 0.0;
          hv = 0.0;
        }
        next.h[c] = h;
        next.hu[c] = hu;
        next.hv[c] = hv;
      }
    }
  });

  dry_velocity_advance(dry, ux, uy, next, topo, params, dt);
  return next;
}

void dry_velocity_advance(DryVelocityField& dry, const std::vector<double>& ux0,
                          const std::vector<double>& uy0, const SweField& water_new,
                          const Topography& topo, const SweParams& params, double dt) {
  const Grid2D& g = dry.grid;
  const int nx = g.nx, ny = g.ny;
  const double grav = params.gravity;
  const BoundarySet& bc = params.boundaries;
  const double eps = params.eps_blend_for(g);
  const double sigma_floor = params.sigma_floor();

  // Unit-depth Riemann data: eta is 1 everywhere at the start of the advance.
  struct Side {
    double un, ut, z;
  };
  auto side_of = [&](int i, int j, bool xnormal) {
    const std::size_t c = g.idx(i, j);
    return xnormal ? Side{ux0[c], uy0[c], topo.z[c]} : Side{uy0[c], ux0[c], topo.z[c]};
  };
  auto mirror = [](Side s) {
    s.un = -s.un;
    return s;
  };
  auto ghost = [&](const Side& interior, BoundaryKind kind, const Side& wrapped) {
    switch (kind) {
      case BoundaryKind::wall: return mirror(interior);
      case BoundaryKind::periodic: return wrapped;
      case BoundaryKind::outflow: return interior;
    }
    return interior;
  };

  const std::size_t nfx = static_cast<std::size_t>(nx + 1) * ny;
  const std::size_t nfy = static_cast<std::size_t>(nx) * (ny + 1);
  std::vector<double> fx_eta(nfx), fx_n(nfx), fx_t(nfx);
  std::vector<double> fy_eta(nfy), fy_n(nfy), fy_t(nfy);

  auto face = [&](const Side& L, const Side& R, double& f_eta, double& f_n, double& f_t) {
    const double sigma = sigma_subcharacteristic(params.h_ref, L.un, params.h_ref, R.un, grav,
                                                 sigma_floor);
    const double ustar = riemann_dry_velocity(L.un, L.z, R.un, R.z, grav, sigma);
    const Side& up = ustar > 0.0 ? L : R;
    f_eta = ustar; // eta == 1 on both sides
    f_n = (ustar != 0.0) ? up.un * ustar : 0.0;
    f_t = (ustar != 0.0) ? up.ut * ustar : 0.0;
  };

  parallel_rows(ny, [&](int j0, int j1) {
    for (int j = j0; j < j1; ++j) {
      for (int fi = 0; fi <= nx; ++fi) {
        Side L = fi == 0 ? ghost(side_of(0, j, true), bc.left, side_of(nx - 1, j, true))
                         : side_of(fi - 1, j, true);
        Side R = fi == nx ? ghost(side_of(nx - 1, j, true), bc.right, side_of(0, j, true))
                          : side_of(fi, j, true);
        const std::size_t f = topo.xface(fi, j);
        face(L, R, fx_eta[f], fx_n[f], fx_t[f]);
      }
    }
  });
  parallel_rows(ny + 1, [&](int fj0, int fj1) {
    for (int fj = fj0; fj < fj1; ++fj) {
      for (int i = 0; i < nx; ++i) {
        Side L = fj == 0 ? ghost(side_of(i, 0, false), bc.bottom, side_of(i, ny - 1, false))
                         : side_of(i, fj - 1, false);
        Side R = fj == ny ? ghost(side_of(i, ny - 1, false), bc.top, side_of(i, 0, false))
                          : side_of(i, fj, false);
        const std::size_t f = topo.yface(i, fj);
        face(L, R, fy_eta[f], fy_n[f], fy_t[f]);
      }
    }
  });

  const double dtdx = dt / g.dx;
  const double dtdy = dt / g.dy;
  const double decay = std::exp(-dt / params.wetdry.mu_relax);

  parallel_rows(ny, [&](int j0, int j1) {
    for (int j = j0; j < j1; ++j) {
      for (int i = 0; i < nx; ++i) {
        const std::size_t c = g.idx(i, j);
        const std::size_t w = topo.xface(i, j), e = topo.xface(i + 1, j);
        const std::size_t s = topo.yface(i, j), n = topo.yface(i, j + 1);

        const double eta = 1.0 - dtdx * (fx_eta[e] - fx_eta[w]) - dtdy * (fy_eta[n] - fy_eta[s]);
        if (!(eta > 0.1))
          throw NonFiniteState("dry velocity: renormalization field collapsed at cell " +
                               std::to_string(c));

        const double mu_x = ux0[c] - dtdx * (fx_n[e] - fx_n[w]) - dtdy * (fy_t[n] - fy_t[s]) -
                            dtdx * grav * (topo.zface_x[e] - topo.zface_x[w]);
        const double mu_y = uy0[c] - dtdx * (fx_t[e] - fx_t[w]) - dtdy * (fy_n[n] - fy_n[s]) -
                            dtdy * grav * (topo.zface_y[n] - topo.zface_y[s]);

        const double bx = mu_x / eta;
        const double by = mu_y / eta;
        const double tx = blend_velocity(water_new.h[c], water_new.hu[c], bx, eps);
        const double ty = blend_velocity(water_new.h[c], water_new.hv[c], by, eps);
        dry.eta[c] = eta;
        dry.ux[c] = tx + (bx - tx) * decay;
        dry.uy[c] = ty + (by - ty) * decay;
      }
    }
  });
}

double max_signal_speed(const SweField& state, const DryVelocityField& dry,
                        const SweParams& params) {
  const double eps = params.eps_blend_for(state.grid);
  double s = 0.0;
  for (std::size_t c = 0; c < state.grid.cells(); ++c) {
    const double celerity = std::sqrt(params.gravity * state.h[c]);
    const double u = blend_velocity(state.h[c], state.hu[c], dry.ux[c], eps);
    const double v = blend_velocity(state.h[c], state.hv[c], dry.uy[c], eps);
    s = std::fmax(s, std::fabs(u) + celerity);
    s = std::fmax(s, std::fabs(v) + celerity);
    s = std::fmax(s, std::fabs(dry.ux[c]));
    s = std::fmax(s, std::fabs(dry.uy[c]));
  }
  return s;
}

CellField energy_per_cell(const SweField& state, double gravity, double eps_blend) {
  CellField e(state.grid, 0.0);
  for (std::size_t c = 0; c < state.grid.cells(); ++c) {
    const double h = state.h[c];
    const double u = blend_velocity(h, state.hu[c], 0.0, eps_blend);
    const double v = blend_velocity(h, state.hv[c], 0.0, eps_blend);
    e.v[c] = 0.5 * h * (u * u + v * v) + 0.5 * gravity * h * h;
  }
  return e;
}

double energy_total(const SweField& state, double gravity, double eps_blend) {
  const CellField e = energy_per_cell(state, gravity, eps_blend);
  double total = 0.0;
  for (double val : e.v) total += val;
  return total * state.grid.cell_area();
}

} // namespace floodsim::swe
