#include "floodsim/debris.hpp"

#include <cmath>
#include <cstdint>
#include <string>

#include "floodsim/threading.hpp"

namespace floodsim::debris {

double friction_rate(double h, const DebrisParams& params) {
  const double hf = params.plunge_depth;
  if (h >= hf) return 0.0;
  const double hc = std::fmax(h, 1e-12 * hf); // avoid division by zero at h = 0
  const double contact = std::fmax(1.0, hf / hc);
  const double submersion = std::pow(std::fmax(0.0, 1.0 - h / hf), params.friction_exponent);
  return contact * submersion / params.tau_friction;
}

double debris_source_update(double v, double u_water, double h, double dt,
                            const DebrisParams& params) {
  const double rate = 1.0 / params.tau_drag + friction_rate(h, params);
  const double decay = std::exp(-rate * dt);
  return v * decay + (1.0 - decay) * u_water / (params.tau_drag * rate);
}

void velocity_fields(const DebrisField& state, double eps, std::vector<double>& vx,
                     std::vector<double>& vy) {
  const std::size_t n = state.grid.cells();
  vx.resize(n);
  vy.resize(n);
  for (std::size_t c = 0; c < n; ++c) {
    vx[c] = recover_velocity(state.rho[c], state.mx[c], eps);
    vy[c] = recover_velocity(state.rho[c], state.my[c], eps);
  }
}

namespace {

struct Side {
  double rho = 0.0;
  double vn = 0.0;
  double qn = 0.0; // conservative normal component of rho^2 v
  double qt = 0.0;
  std::int64_t cell = -1;
};

struct FaceOut {
  double phi_rho = 0.0;
  double phi_qn = 0.0;
  double phi_qt = 0.0;
  std::int64_t donor = -1;
};

FaceOut solve_face(const Side& L, const Side& R) {
  FaceOut out;
  const double rsum = L.rho + R.rho;
  if (rsum <= 0.0) return out;
  const double vstar = (L.rho * L.vn + R.rho * R.vn) / rsum;
  const Side& up = vstar > 0.0 ? L : R;
  if (vstar == 0.0) return out;
  out.phi_rho = up.rho * vstar;
  out.phi_qn = up.qn * vstar;
  out.phi_qt = up.qt * vstar;
  out.donor = up.cell;
  return out;
}

} // namespace

DebrisField convective_step(const DebrisField& state, const BoundarySet& bc, double eps,
                            double dt) {
  const Grid2D& g = state.grid;
  const int nx = g.nx, ny = g.ny;

  std::vector<double> vx, vy;
  velocity_fields(state, eps, vx, vy);

  auto side_of = [&](int i, int j, bool xnormal) {
    const std::size_t c = g.idx(i, j);
    Side s;
    s.rho = state.rho[c];
    s.cell = static_cast<std::int64_t>(c);
    if (xnormal) {
      s.vn = vx[c];
      s.qn = state.mx[c];
      s.qt = state.my[c];
    } else {
      s.vn = vy[c];
      s.qn = state.my[c];
      s.qt = state.mx[c];
    }
    return s;
  };
  auto mirror = [](Side s) {
    s.vn = -s.vn;
    s.qn = -s.qn;
    s.cell = -1;
    return s;
  };
  auto ghost = [&](const Side& interior, BoundaryKind kind, const Side& wrapped) {
    switch (kind) {
      case BoundaryKind::wall: return mirror(interior);
      case BoundaryKind::periodic: return wrapped;
      case BoundaryKind::outflow: {
        Side s = interior;
        s.cell = -1;
        return s;
      }
    }
    return interior;
  };

  const std::size_t nfx = static_cast<std::size_t>(nx + 1) * ny;
  const std::size_t nfy = static_cast<std::size_t>(nx) * (ny + 1);
  std::vector<double> fxr(nfx), fxn(nfx), fxt(nfx);
  std::vector<double> fyr(nfy), fyn(nfy), fyt(nfy);
  std::vector<std::int64_t> dox(nfx, -1), doy(nfy, -1);

  auto xface = [&](int fi, int j) { return static_cast<std::size_t>(j) * (nx + 1) + fi; };
  auto yface = [&](int i, int fj) { return static_cast<std::size_t>(fj) * nx + i; };

  parallel_rows(ny, [&](int j0, int j1) {
    for (int j = j0; j < j1; ++j) {
      for (int fi = 0; fi <= nx; ++fi) {
        const Side L = fi == 0 ? ghost(side_of(0, j, true), bc.left, side_of(nx - 1, j, true))
                               : side_of(fi - 1, j, true);
        const Side R = fi == nx ? ghost(side_of(nx - 1, j, true), bc.right, side_of(0, j, true))
                                : side_of(fi, j, true);
        const FaceOut o = solve_face(L, R);
        const std::size_t f = xface(fi, j);
        fxr[f] = o.phi_rho;
        fxn[f] = o.phi_qn;
        fxt[f] = o.phi_qt;
        dox[f] = o.donor;
      }
    }
  });
  parallel_rows(ny + 1, [&](int fj0, int fj1) {
    for (int fj = fj0; fj < fj1; ++fj) {
      for (int i = 0; i < nx; ++i) {
        const Side L = fj == 0 ? ghost(side_of(i, 0, false), bc.bottom, side_of(i, ny - 1, false))
                               : side_of(i, fj - 1, false);
        const Side R = fj == ny ? ghost(side_of(i, ny - 1, false), bc.top, side_of(i, 0, false))
                                : side_of(i, fj, false);
        const FaceOut o = solve_face(L, R);
        const std::size_t f = yface(i, fj);
        fyr[f] = o.phi_rho;
        fyn[f] = o.phi_qn;
        fyt[f] = o.phi_qt;
        doy[f] = o.donor;
      }
    }
  });

  // Same outflow clamp as the water solver.
  std::vector<double> alpha(g.cells(), 1.0);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t c = g.idx(i, j);
      const double fw = fxr[xface(i, j)], fe = fxr[xface(i + 1, j)];
      const double fs = fyr[yface(i, j)], fn = fyr[yface(i, j + 1)];
      double out = 0.0;
      if (fe > 0.0) out += fe * g.dy;
      if (fw < 0.0) out -= fw * g.dy;
      if (fn > 0.0) out += fn * g.dx;
      if (fs < 0.0) out -= fs * g.dx;
      const double budget = state.rho[c] * g.cell_area();
      if (out * dt > budget) alpha[c] = budget / (out * dt);
    }
  }
  auto face_alpha = [&](const std::vector<std::int64_t>& donor, std::size_t f) {
    return donor[f] >= 0 ? alpha[static_cast<std::size_t>(donor[f])] : 1.0;
  };

  DebrisField next(g);
  const double dtdx = dt / g.dx;
  const double dtdy = dt / g.dy;
  parallel_rows(ny, [&](int j0, int j1) {
    for (int j = j0; j < j1; ++j) {
      for (int i = 0; i < nx; ++i) {
        const std::size_t c = g.idx(i, j);
        const std::size_t w = xface(i, j), e = xface(i + 1, j);
        const std::size_t s = yface(i, j), n = yface(i, j + 1);
        const double aw = face_alpha(dox, w), ae = face_alpha(dox, e);
        const double as = face_alpha(doy, s), an = face_alpha(doy, n);

        double rho = state.rho[c] - dtdx * (ae * fxr[e] - aw * fxr[w]) -
                     dtdy * (an * fyr[n] - as * fyr[s]);
        if (rho < 0.0) {
          if (rho < -1e-12)
            throw NonFiniteState("debris: negative density " + std::to_string(rho) +
                                 " at cell " + std::to_string(c));
          rho = 0.0;
        }
        double mx = state.mx[c] - dtdx * (ae * fxn[e] - aw * fxn[w]) -
                    dtdy * (an * fyt[n] - as * fyt[s]);
        double my = state.my[c] - dtdx * (ae * fxt[e] - aw * fxt[w]) -
                    dtdy * (an * fyn[n] - as * fyn[s]);
        if (rho == 0.0) {
          mx = 0.0;
          my = 0.0;
        }
        next.rho[c] = rho;
        next.mx[c] = mx;
        next.my[c] = my;
      }
    }
  });
  return next;
}

void apply_source(DebrisField& state, const std::vector<double>& h,
                  const std::vector<double>& u_water_x, const std::vector<double>& u_water_y,
                  const DebrisParams& params, double eps, double dt) {
  for (std::size_t c = 0; c < state.grid.cells(); ++c) {
    const double rho = state.rho[c];
    if (rho <= 0.0) continue;
    const double vx = recover_velocity(rho, state.mx[c], eps);
    const double vy = recover_velocity(rho, state.my[c], eps);
    const double nvx = debris_source_update(vx, u_water_x[c], h[c], dt, params);
    const double nvy = debris_source_update(vy, u_water_y[c], h[c], dt, params);
    state.mx[c] = rho * rho * nvx;
    state.my[c] = rho * rho * nvy;
  }
}

void interaction_term_2d(const Grid2D& grid, const std::vector<double>& rho,
                         const std::vector<double>& vx, const std::vector<double>& vy,
                         double lambda, std::vector<double>& ax, std::vector<double>& ay) {
  ax.assign(grid.cells(), 0.0);
  ay.assign(grid.cells(), 0.0);
  if (lambda == 0.0) return;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const bool interior_x = i > 0 && i < grid.nx - 1;
      const bool interior_y = j > 0 && j < grid.ny - 1;
      if (!interior_x && grid.nx > 1) continue;
      if (!interior_y && grid.ny > 1) continue;
      double div = 0.0;
      if (grid.nx > 1) div += (vx[grid.idx(i + 1, j)] - vx[grid.idx(i - 1, j)]) / (2.0 * grid.dx);
      if (grid.ny > 1) div += (vy[grid.idx(i, j + 1)] - vy[grid.idx(i, j - 1)]) / (2.0 * grid.dy);
      const std::size_t c = grid.idx(i, j);
      ax[c] = -lambda * rho[c] * div * vx[c];
      ay[c] = -lambda * rho[c] * div * vy[c];
    }
  }
}

double max_speed(const DebrisField& state, double eps) {
  double s = 0.0;
  for (std::size_t c = 0; c < state.grid.cells(); ++c) {
    s = std::fmax(s, std::fabs(recover_velocity(state.rho[c], state.mx[c], eps)));
    s = std::fmax(s, std::fabs(recover_velocity(state.rho[c], state.my[c], eps)));
  }
  return s;
}

double total_mass(const DebrisField& state) {
  double m = 0.0;
  for (double r : state.rho) m += r;
  return m * state.grid.cell_area();
}

Pressureless1D pressureless_step(const Pressureless1D& state, BoundaryKind left,
                                 BoundaryKind right, double eps, double dt) {
  const Grid2D& g = state.grid;
  if (g.ny != 1) throw ValidationError("pressureless_step: 1D solver (ny must be 1)");
  const int n = g.nx;

  auto vel = [&](double rho, double m) { return (rho * m) / (rho * rho + eps); };

  std::vector<double> phi_r(n + 1, 0.0), phi_m(n + 1, 0.0);
  std::vector<std::int64_t> donor(n + 1, -1);
  for (int f = 0; f <= n; ++f) {
    double rl, ml, rr, mr;
    std::int64_t cl = -1, cr = -1;
    if (f == 0) {
      if (left == BoundaryKind::periodic) {
        rl = state.rho[n - 1];
        ml = state.m[n - 1];
        cl = n - 1;
      } else if (left == BoundaryKind::wall) {
        rl = state.rho[0];
        ml = -state.m[0];
      } else {
        rl = state.rho[0];
        ml = state.m[0];
      }
    } else {
      rl = state.rho[f - 1];
      ml = state.m[f - 1];
      cl = f - 1;
    }
    if (f == n) {
      if (right == BoundaryKind::periodic) {
        rr = state.rho[0];
        mr = state.m[0];
        cr = 0;
      } else if (right == BoundaryKind::wall) {
        rr = state.rho[n - 1];
        mr = -state.m[n - 1];
      } else {
        rr = state.rho[n - 1];
        mr = state.m[n - 1];
      }
    } else {
      rr = state.rho[f];
      mr = state.m[f];
      cr = f;
    }
    const double rsum = rl + rr;
    if (rsum <= 0.0) continue;
    const double vstar = (rl * vel(rl, ml) + rr * vel(rr, mr)) / rsum;
    if (vstar > 0.0) {
      phi_r[f] = rl * vstar;
      phi_m[f] = ml * vstar;
      donor[f] = cl;
    } else if (vstar < 0.0) {
      phi_r[f] = rr * vstar;
      phi_m[f] = mr * vstar;
      donor[f] = cr;
    }
  }

  std::vector<double> alpha(n, 1.0);
  for (int i = 0; i < n; ++i) {
    double out = 0.0;
    if (phi_r[i + 1] > 0.0) out += phi_r[i + 1];
    if (phi_r[i] < 0.0) out -= phi_r[i];
    const double budget = state.rho[i] * g.dx;
    if (out * dt > budget) alpha[i] = budget / (out * dt);
  }
  auto fa = [&](int f) { return donor[f] >= 0 ? alpha[donor[f]] : 1.0; };

  Pressureless1D next(g);
  const double dtdx = dt / g.dx;
  for (int i = 0; i < n; ++i) {
    double rho = state.rho[i] - dtdx * (fa(i + 1) * phi_r[i + 1] - fa(i) * phi_r[i]);
    double m = state.m[i] - dtdx * (fa(i + 1) * phi_m[i + 1] - fa(i) * phi_m[i]);
    if (rho < 0.0) rho = 0.0;
    if (rho == 0.0) m = 0.0;
    next.rho[i] = rho;
    next.m[i] = m;
  }
  return next;
}

} // namespace floodsim::debris
