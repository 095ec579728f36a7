#include "floodsim/exact_riemann.hpp"

#include <cmath>
#include <string>

namespace floodsim::euler {

namespace {

// Pressure function of one side and its derivative (shock or rarefaction).
void side_function(double p, const PrimCell& w, double c, double gamma, double& f, double& df) {
  if (p > w.p) {
    const double A = 2.0 / ((gamma + 1.0) * w.rho);
    const double B = (gamma - 1.0) / (gamma + 1.0) * w.p;
    const double root = std::sqrt(A / (p + B));
    f = (p - w.p) * root;
    df = root * (1.0 - 0.5 * (p - w.p) / (B + p));
  } else {
    const double ex = (gamma - 1.0) / (2.0 * gamma);
    f = 2.0 * c / (gamma - 1.0) * (std::pow(p / w.p, ex) - 1.0);
    df = std::pow(p / w.p, -(gamma + 1.0) / (2.0 * gamma)) / (w.rho * c);
  }
}

} // namespace

RiemannFanSolution solve_riemann_exact(const PrimCell& left, const PrimCell& right,
                                       const GasParams& gas, int max_iter, double tol) {
  gas.validate();
  if (!(left.rho > 0.0 && left.p > 0.0 && right.rho > 0.0 && right.p > 0.0))
    throw NonPhysicalState("exact riemann: states must have positive density and pressure");

  const double g = gas.gamma;
  const double cl = sound_speed(left, gas);
  const double cr = sound_speed(right, gas);
  const double du = right.u - left.u;
  if (2.0 * cl / (g - 1.0) + 2.0 * cr / (g - 1.0) <= du)
    throw NonPhysicalState("exact riemann: initial states generate vacuum");

  // Two-rarefaction guess, clipped away from zero.
  const double z = (g - 1.0) / (2.0 * g);
  double p = std::pow((cl + cr - 0.5 * (g - 1.0) * du) /
                          (cl / std::pow(left.p, z) + cr / std::pow(right.p, z)),
                      1.0 / z);
  p = std::fmax(p, 1e-10 * std::fmin(left.p, right.p));

  bool converged = false;
  for (int it = 0; it < max_iter; ++it) {
    double fl, dfl, fr, dfr;
    side_function(p, left, cl, g, fl, dfl);
    side_function(p, right, cr, g, fr, dfr);
    const double f = fl + fr + du;
    const double step = f / (dfl + dfr);
    double pn = p - step;
    if (pn <= 0.0) pn = 0.5 * p;
    const double change = 2.0 * std::fabs(pn - p) / (pn + p);
    p = pn;
    if (change < tol) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw NoConvergence("exact riemann: Newton iteration did not converge in " +
                        std::to_string(max_iter) + " iterations");

  double fl, dfl, fr, dfr;
  side_function(p, left, cl, g, fl, dfl);
  side_function(p, right, cr, g, fr, dfr);

  RiemannFanSolution sol;
  sol.left = left;
  sol.right = right;
  sol.gas = gas;
  sol.p_star = p;
  sol.u_star = 0.5 * (left.u + right.u) + 0.5 * (fr - fl);
  return sol;
}

PrimCell RiemannFanSolution::sample(double xi) const {
  const double g = gas.gamma;
  const double gm = (g - 1.0) / (g + 1.0);

  if (xi <= u_star) {
    const double c = sound_speed(left, gas);
    if (p_star > left.p) { // left shock
      const double ratio = p_star / left.p;
      const double s = left.u - c * std::sqrt((g + 1.0) / (2.0 * g) * ratio + (g - 1.0) / (2.0 * g));
      if (xi <= s) return left;
      return {left.rho * (ratio + gm) / (gm * ratio + 1.0), u_star, p_star};
    }
    // left rarefaction
    const double head = left.u - c;
    const double c_star = c * std::pow(p_star / left.p, (g - 1.0) / (2.0 * g));
    const double tail = u_star - c_star;
    if (xi <= head) return left;
    if (xi >= tail) return {left.rho * std::pow(p_star / left.p, 1.0 / g), u_star, p_star};
    const double cf = 2.0 / (g + 1.0) * (c + 0.5 * (g - 1.0) * (left.u - xi));
    const double uf = 2.0 / (g + 1.0) * (c + 0.5 * (g - 1.0) * left.u + xi);
    return {left.rho * std::pow(cf / c, 2.0 / (g - 1.0)), uf,
            left.p * std::pow(cf / c, 2.0 * g / (g - 1.0))};
  }

  const double c = sound_speed(right, gas);
  if (p_star > right.p) { // right shock
    const double ratio = p_star / right.p;
    const double s = right.u + c * std::sqrt((g + 1.0) / (2.0 * g) * ratio + (g - 1.0) / (2.0 * g));
    if (xi >= s) return right;
    return {right.rho * (ratio + gm) / (gm * ratio + 1.0), u_star, p_star};
  }
  // right rarefaction
  const double head = right.u + c;
  const double c_star = c * std::pow(p_star / right.p, (g - 1.0) / (2.0 * g));
  const double tail = u_star + c_star;
  if (xi >= head) return right;
  if (xi <= tail) return {right.rho * std::pow(p_star / right.p, 1.0 / g), u_star, p_star};
  const double cf = 2.0 / (g + 1.0) * (c - 0.5 * (g - 1.0) * (right.u - xi));
  const double uf = 2.0 / (g + 1.0) * (-c + 0.5 * (g - 1.0) * right.u + xi);
  return {right.rho * std::pow(cf / c, 2.0 / (g - 1.0)), uf,
          right.p * std::pow(cf / c, 2.0 * g / (g - 1.0))};
}

} // namespace floodsim::euler
