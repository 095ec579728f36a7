#include "floodsim/euler.hpp"

#include <cmath>
#include <string>

#include "floodsim/exact_riemann.hpp"
#include "floodsim/time_control.hpp"

namespace floodsim::euler {

EulerCell conservative_from_primitive(const PrimCell& w, const GasParams& gas) {
  EulerCell c;
  c.rho = w.rho;
  c.mom = w.rho * w.u;
  c.ene = w.p / (gas.gamma - 1.0) + 0.5 * w.rho * w.u * w.u;
  return c;
}

PrimCell primitive_from_conservative(const EulerCell& c, const GasParams& gas) {
  if (!(c.rho > 0.0))
    throw NonPhysicalState("euler: non-positive density " + std::to_string(c.rho));
  PrimCell w;
  w.rho = c.rho;
  w.u = c.mom / c.rho;
  w.p = (gas.gamma - 1.0) * (c.ene - 0.5 * c.mom * c.mom / c.rho);
  if (!(w.p > 0.0))
    throw NonPhysicalState("euler: non-positive pressure " + std::to_string(w.p));
  return w;
}

std::pair<double, double> eos_pressure(const EulerCell& state, const GasParams& gas) {
  const PrimCell w = primitive_from_conservative(state, gas);
  return {w.p, std::sqrt(gas.gamma * w.p / w.rho)};
}

double sound_speed(const PrimCell& w, const GasParams& gas) {
  return std::sqrt(gas.gamma * w.p / w.rho);
}

ContactValues hll_lagrange_contact(const PrimCell& left, const PrimCell& right,
                                   const GasParams& gas) {
  const double cmax = std::fmax(sound_speed(left, gas), sound_speed(right, gas));
  const double rsum = left.rho + right.rho;
  ContactValues cv;
  cv.p_star = (right.rho * left.p + left.rho * right.p) / rsum -
              (left.rho * right.rho / rsum) * cmax * (right.u - left.u);
  cv.u_star = (left.rho * left.u + right.rho * right.u) / rsum -
              (right.p - left.p) / (rsum * cmax);
  return cv;
}

std::array<double, 3> euler_numerical_flux(const PrimCell& left, const PrimCell& right,
                                           const GasParams& gas) {
  const ContactValues cv = hll_lagrange_contact(left, right, gas);
  const PrimCell& up = cv.u_star > 0.0 ? left : right;
  const EulerCell uc = conservative_from_primitive(up, gas);
  return {uc.rho * cv.u_star, uc.mom * cv.u_star + cv.p_star,
          uc.ene * cv.u_star + cv.p_star * cv.u_star};
}

namespace {

// Primitive arrays plus limited slopes; ghost handling per boundary kind.
struct PrimLine {
  std::vector<double> rho, u, p;
  std::vector<double> drho, du, dp; // limited slopes times dx (undivided)
};

PrimCell ghost_cell(const PrimLine& w, int n, bool left_side, BoundaryKind kind) {
  const int edge = left_side ? 0 : n - 1;
  const int wrap = left_side ? n - 1 : 0;
  switch (kind) {
    case BoundaryKind::outflow: return {w.rho[edge], w.u[edge], w.p[edge]};
    case BoundaryKind::wall: return {w.rho[edge], -w.u[edge], w.p[edge]};
    case BoundaryKind::periodic: return {w.rho[wrap], w.u[wrap], w.p[wrap]};
  }
  return {};
}

void limited_slopes(const std::vector<double>& q, std::vector<double>& dq, double beta) {
  const int n = static_cast<int>(q.size());
  dq.assign(q.size(), 0.0);
  if (n < 3) return;
  for (int i = 1; i < n - 1; ++i)
    dq[i] = sweby_limiter(q[i + 1] - q[i], q[i] - q[i - 1], beta);
}

// Fluxes at the n+1 interfaces of one line of cells.
void line_fluxes(const PrimLine& w, const EulerStepParams& params,
                 std::vector<std::array<double, 3>>& flux) {
  const int n = static_cast<int>(w.rho.size());
  flux.resize(n + 1);
  for (int f = 0; f <= n; ++f) {
    PrimCell L, R;
    if (f == 0) {
      L = ghost_cell(w, n, true, params.left);
    } else {
      const int i = f - 1;
      L = {w.rho[i] + 0.5 * w.drho[i], w.u[i] + 0.5 * w.du[i], w.p[i] + 0.5 * w.dp[i]};
    }
    if (f == n) {
      R = ghost_cell(w, n, false, params.right);
    } else {
      R = {w.rho[f] - 0.5 * w.drho[f], w.u[f] - 0.5 * w.du[f], w.p[f] - 0.5 * w.dp[f]};
    }
    if (!(L.rho > 0.0 && L.p > 0.0 && R.rho > 0.0 && R.p > 0.0))
      throw NonPhysicalState("euler: reconstructed interface state lost positivity at face " +
                             std::to_string(f));
    flux[f] = euler_numerical_flux(L, R, params.gas);
  }
}

PrimLine primitives_of(const EulerField& U, const EulerStepParams& params) {
  const int n = static_cast<int>(U.rho.size());
  PrimLine w;
  w.rho.resize(n);
  w.u.resize(n);
  w.p.resize(n);
  for (int i = 0; i < n; ++i) {
    const PrimCell pc = primitive_from_conservative({U.rho[i], U.mom[i], U.ene[i]}, params.gas);
    w.rho[i] = pc.rho;
    w.u[i] = pc.u;
    w.p[i] = pc.p;
  }
  if (params.first_order) {
    w.drho.assign(n, 0.0);
    w.du.assign(n, 0.0);
    w.dp.assign(n, 0.0);
  } else {
    limited_slopes(w.rho, w.drho, params.limiter.beta);
    limited_slopes(w.u, w.du, params.limiter.beta);
    limited_slopes(w.p, w.dp, params.limiter.beta);
  }
  return w;
}

} // namespace

EulerField euler_step(const EulerField& states, const EulerStepParams& params, double dt) {
  if (states.grid.ny != 1)
    throw ValidationError("euler_step: solver is one-dimensional (ny must be 1)");
  params.gas.validate();
  const int n = states.grid.nx;
  const double lam = dt / states.grid.dx;

  // predictor
  const PrimLine w0 = primitives_of(states, params);
  std::vector<std::array<double, 3>> f0;
  line_fluxes(w0, params, f0);

  EulerField pred(states.grid);
  for (int i = 0; i < n; ++i) {
    pred.rho[i] = states.rho[i] - lam * (f0[i + 1][0] - f0[i][0]);
    pred.mom[i] = states.mom[i] - lam * (f0[i + 1][1] - f0[i][1]);
    pred.ene[i] = states.ene[i] - lam * (f0[i + 1][2] - f0[i][2]);
  }

  // corrector
  const PrimLine w1 = primitives_of(pred, params);
  std::vector<std::array<double, 3>> f1;
  line_fluxes(w1, params, f1);

  EulerField next(states.grid);
  for (int i = 0; i < n; ++i) {
    next.rho[i] = states.rho[i] - 0.5 * lam * ((f0[i + 1][0] + f1[i + 1][0]) - (f0[i][0] + f1[i][0]));
    next.mom[i] = states.mom[i] - 0.5 * lam * ((f0[i + 1][1] + f1[i + 1][1]) - (f0[i][1] + f1[i][1]));
    next.ene[i] = states.ene[i] - 0.5 * lam * ((f0[i + 1][2] + f1[i + 1][2]) - (f0[i][2] + f1[i][2]));
  }
  return next;
}

double max_signal_speed(const EulerField& states, const GasParams& gas) {
  double s = 0.0;
  for (std::size_t i = 0; i < states.rho.size(); ++i) {
    const PrimCell w =
        primitive_from_conservative({states.rho[i], states.mom[i], states.ene[i]}, gas);
    s = std::fmax(s, std::fabs(w.u) + sound_speed(w, gas));
  }
  return s;
}

SodResult run_sod(int cells, double t_end, double cfl, double beta, bool first_order) {
  const Grid2D grid = Grid2D::make(cells, 1, 0.0, 0.0, 1.0, 1.0);
  EulerStepParams params;
  params.limiter.beta = beta;
  params.first_order = first_order;

  const PrimCell wl{1.0, 0.0, 1.0};
  const PrimCell wr{0.125, 0.0, 0.1};

  EulerField U(grid);
  for (int i = 0; i < cells; ++i) {
    const PrimCell& w = grid.cx(i) < 0.5 ? wl : wr;
    const EulerCell c = conservative_from_primitive(w, params.gas);
    U.rho[i] = c.rho;
    U.mom[i] = c.mom;
    U.ene[i] = c.ene;
  }

  double t = 0.0;
  int steps = 0;
  while (t < t_end) {
    const double speed = max_signal_speed(U, params.gas);
    double dt = compute_dt_cfl(speed, grid, cfl);
    dt = std::fmin(dt, t_end - t);
    U = euler_step(U, params, dt);
    t += dt;
    ++steps;
  }

  const RiemannFanSolution exact = solve_riemann_exact(wl, wr, params.gas);
  SodResult res;
  res.steps = steps;
  res.x.resize(cells);
  res.rho.resize(cells);
  res.u.resize(cells);
  res.p.resize(cells);
  for (int i = 0; i < cells; ++i) {
    const PrimCell w =
        primitive_from_conservative({U.rho[i], U.mom[i], U.ene[i]}, params.gas);
    res.x[i] = grid.cx(i);
    res.rho[i] = w.rho;
    res.u[i] = w.u;
    res.p[i] = w.p;
    const PrimCell ex = exact.sample((grid.cx(i) - 0.5) / t_end);
    res.l1_rho += std::fabs(w.rho - ex.rho) * grid.dx;
    res.l1_u += std::fabs(w.u - ex.u) * grid.dx;
    res.l1_p += std::fabs(w.p - ex.p) * grid.dx;
  }
  return res;
}

} // namespace floodsim::euler
