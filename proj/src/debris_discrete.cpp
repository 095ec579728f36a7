#include "floodsim/debris_discrete.hpp"

#include <cmath>
#include <string>

namespace floodsim::debris {

void discrete_debris_rhs(const DiscreteDebris& sys, const WaterProbe& water,
                         const DebrisParams& params, std::vector<double>& dxdt,
                         std::vector<double>& dvdt) {
  const std::size_t n = sys.x.size();
  dxdt.resize(n);
  dvdt.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double xj = sys.x[j];
    const double vj = sys.v[j];
    dxdt[j] = vj;
    double acc = (water.u(xj) - vj) / params.tau_drag - friction_rate(water.h(xj), params) * vj;
    if (j + 1 < n) {
      const double gap = sys.x[j + 1] - xj;
      if (gap <= sys.gap_min)
        throw OrderingViolated("discrete debris: gap " + std::to_string(gap) +
                               " at particle " + std::to_string(j));
      acc += params.lambda * vj * (sys.v[j + 1] - vj) / gap;
    }
    dvdt[j] = acc;
  }
}

void discrete_advance_rk4(DiscreteDebris& sys, const WaterProbe& water,
                          const DebrisParams& params, double t_end, int steps) {
  const double dt = t_end / steps;
  const std::size_t n = sys.x.size();
  std::vector<double> k1x, k1v, k2x, k2v, k3x, k3v, k4x, k4v;
  DiscreteDebris tmp = sys;

  for (int s = 0; s < steps; ++s) {
    discrete_debris_rhs(sys, water, params, k1x, k1v);
    for (std::size_t j = 0; j < n; ++j) {
      tmp.x[j] = sys.x[j] + 0.5 * dt * k1x[j];
      tmp.v[j] = sys.v[j] + 0.5 * dt * k1v[j];
    }
    discrete_debris_rhs(tmp, water, params, k2x, k2v);
    for (std::size_t j = 0; j < n; ++j) {
      tmp.x[j] = sys.x[j] + 0.5 * dt * k2x[j];
      tmp.v[j] = sys.v[j] + 0.5 * dt * k2v[j];
    }
    discrete_debris_rhs(tmp, water, params, k3x, k3v);
    for (std::size_t j = 0; j < n; ++j) {
      tmp.x[j] = sys.x[j] + dt * k3x[j];
      tmp.v[j] = sys.v[j] + dt * k3v[j];
    }
    discrete_debris_rhs(tmp, water, params, k4x, k4v);
    for (std::size_t j = 0; j < n; ++j) {
      sys.x[j] += dt / 6.0 * (k1x[j] + 2.0 * k2x[j] + 2.0 * k3x[j] + k4x[j]);
      sys.v[j] += dt / 6.0 * (k1v[j] + 2.0 * k2v[j] + 2.0 * k3v[j] + k4v[j]);
    }
  }
}

std::vector<std::pair<double, double>> density_from_spacing(const DiscreteDebris& sys,
                                                            const DebrisParams& params) {
  std::vector<std::pair<double, double>> samples;
  if (sys.x.size() < 2) return samples;
  samples.reserve(sys.x.size() - 1);
  for (std::size_t j = 0; j + 1 < sys.x.size(); ++j) {
    const double gap = sys.x[j + 1] - sys.x[j];
    if (gap <= sys.gap_min)
      throw OrderingViolated("discrete debris: gap " + std::to_string(gap) + " at particle " +
                             std::to_string(j));
    samples.emplace_back(sys.x[j], params.rho_max * params.piece_length / gap);
  }
  return samples;
}

} // namespace floodsim::debris
