#include <doctest.h>

#include <cmath>

#include "floodsim/euler.hpp"
#include "floodsim/exact_riemann.hpp"
#include "floodsim/time_control.hpp"

using namespace floodsim;
using namespace floodsim::euler;

namespace {

const GasParams gas{1.4};

EulerField uniform_field(const Grid2D& g, const PrimCell& w) {
  EulerField U(g);
  const EulerCell c = conservative_from_primitive(w, gas);
  for (int i = 0; i < g.nx; ++i) {
    U.rho[i] = c.rho;
    U.mom[i] = c.mom;
    U.ene[i] = c.ene;
  }
  return U;
}

EulerField riemann_field(const Grid2D& g, const PrimCell& wl, const PrimCell& wr, double x_jump) {
  EulerField U(g);
  for (int i = 0; i < g.nx; ++i) {
    const EulerCell c = conservative_from_primitive(g.cx(i) < x_jump ? wl : wr, gas);
    U.rho[i] = c.rho;
    U.mom[i] = c.mom;
    U.ene[i] = c.ene;
  }
  return U;
}

std::array<double, 3> totals(const EulerField& U) {
  std::array<double, 3> t{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < U.rho.size(); ++i) {
    t[0] += U.rho[i];
    t[1] += U.mom[i];
    t[2] += U.ene[i];
  }
  for (double& v : t) v *= U.grid.dx;
  return t;
}

} // namespace

TEST_CASE("equation of state on the shock tube states") {
  const EulerCell left = conservative_from_primitive({1.0, 0.0, 1.0}, gas);
  auto [pl, cl] = eos_pressure(left, gas);
  CHECK(pl == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(cl == doctest::Approx(std::sqrt(1.4)).epsilon(1e-14));

  const EulerCell right = conservative_from_primitive({0.125, 0.0, 0.1}, gas);
  auto [pr, cr] = eos_pressure(right, gas);
  CHECK(pr == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(cr == doctest::Approx(std::sqrt(1.4 * 0.1 / 0.125)).epsilon(1e-14));

  // sound speed does not depend on the bulk velocity
  for (double u : {-3.0, 0.5, 7.0}) {
    const EulerCell c = conservative_from_primitive({1.0, u, 1.0}, gas);
    CHECK(eos_pressure(c, gas).second == doctest::Approx(cl).epsilon(1e-12));
  }
}

TEST_CASE("equation of state rejects non-physical states") {
  CHECK_THROWS_AS(eos_pressure({1.0, 0.0, -1.0}, gas), NonPhysicalState);
  CHECK_THROWS_AS(eos_pressure({-1.0, 0.0, 1.0}, gas), NonPhysicalState);
  // kinetic energy exceeding the total energy means negative pressure
  CHECK_THROWS_AS(eos_pressure({1.0, 10.0, 1.0}, gas), NonPhysicalState);
}

TEST_CASE("contact values at an interface") {
  SUBCASE("identical states return that state") {
    const ContactValues cv = hll_lagrange_contact({1.0, 0.0, 1.0}, {1.0, 0.0, 1.0}, gas);
    CHECK(cv.p_star == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(cv.u_star == 0.0);
  }
  SUBCASE("uniform translation is preserved") {
    const ContactValues cv = hll_lagrange_contact({1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}, gas);
    CHECK(cv.p_star == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(cv.u_star == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("shock tube interface") {
    const ContactValues cv = hll_lagrange_contact({1.0, 0.0, 1.0}, {0.125, 0.0, 0.1}, gas);
    CHECK(cv.p_star == doctest::Approx(0.2).epsilon(1e-13));
    CHECK(cv.u_star == doctest::Approx(0.6761).epsilon(2e-4));
  }
}

TEST_CASE("numerical flux is consistent and upwinded") {
  SUBCASE("equal states give the exact physical flux") {
    const PrimCell w{1.2, 0.8, 1.7};
    const auto f = euler_numerical_flux(w, w, gas);
    const EulerCell c = conservative_from_primitive(w, gas);
    CHECK(f[0] == doctest::Approx(c.rho * w.u).epsilon(1e-13));
    CHECK(f[1] == doctest::Approx(c.mom * w.u + w.p).epsilon(1e-13));
    CHECK(f[2] == doctest::Approx(c.ene * w.u + w.p * w.u).epsilon(1e-13));
  }
  SUBCASE("positive contact velocity upwinds on the left state") {
    const PrimCell L{1.0, 1.0, 1.0};
    const PrimCell R{0.5, 1.0, 1.0};
    const ContactValues cv = hll_lagrange_contact(L, R, gas);
    REQUIRE(cv.u_star > 0.0);
    const auto f = euler_numerical_flux(L, R, gas);
    CHECK(f[0] == doctest::Approx(L.rho * cv.u_star).epsilon(1e-13));
  }
}

TEST_CASE("euler_step leaves a uniform field unchanged") {
  const Grid2D g = Grid2D::make(50, 1, 0.0, 0.0, 1.0, 1.0);
  EulerField U = uniform_field(g, {1.0, 0.5, 0.7});
  EulerStepParams params;
  const EulerField next = euler_step(U, params, 1e-3);
  for (int i = 0; i < g.nx; ++i) {
    CHECK(next.rho[i] == doctest::Approx(U.rho[i]).epsilon(1e-14));
    CHECK(next.mom[i] == doctest::Approx(U.mom[i]).epsilon(1e-14));
    CHECK(next.ene[i] == doctest::Approx(U.ene[i]).epsilon(1e-14));
  }
}

TEST_CASE("euler_step conserves mass, momentum and energy with periodic boundaries") {
  const Grid2D g = Grid2D::make(64, 1, 0.0, 0.0, 1.0, 1.0);
  EulerField U(g);
  for (int i = 0; i < g.nx; ++i) {
    const double x = g.cx(i);
    const PrimCell w{1.0 + 0.3 * std::sin(2.0 * M_PI * x), 0.4 * std::cos(2.0 * M_PI * x),
                     1.0 + 0.2 * std::sin(4.0 * M_PI * x)};
    const EulerCell c = conservative_from_primitive(w, gas);
    U.rho[i] = c.rho;
    U.mom[i] = c.mom;
    U.ene[i] = c.ene;
  }
  EulerStepParams params;
  params.left = BoundaryKind::periodic;
  params.right = BoundaryKind::periodic;

  const auto before = totals(U);
  for (int s = 0; s < 50; ++s) {
    const double dt = compute_dt_cfl(max_signal_speed(U, gas), g, 0.4);
    U = euler_step(U, params, dt);
  }
  const auto after = totals(U);
  for (int k = 0; k < 3; ++k)
    CHECK(std::fabs(after[k] - before[k]) <= 1e-12 * std::fmax(std::fabs(before[k]), 1.0));
}

TEST_CASE("single-interface data conserves after one step with flux accounting") {
  const Grid2D g = Grid2D::make(50, 1, 0.0, 0.0, 1.0, 1.0);
  EulerField U = riemann_field(g, {1.0, 0.0, 1.0}, {0.125, 0.0, 0.1}, 0.5);
  EulerStepParams params; // outflow ends; interior waves never reach them in one step
  const auto before = totals(U);
  const double dt = compute_dt_cfl(max_signal_speed(U, gas), g, 0.25);
  const EulerField next = euler_step(U, params, dt);
  const auto after = totals(next);
  // Boundary cells are untouched after one step, so the boundary fluxes are
  // the uniform-state fluxes; both states are at rest, leaving only the
  // pressure part of the momentum flux.
  CHECK(after[0] == doctest::Approx(before[0]).epsilon(1e-13));
  const double momentum_influx = dt * (1.0 - 0.1); // p_left - p_right
  CHECK(after[1] - before[1] == doctest::Approx(momentum_influx).epsilon(1e-12));
  CHECK(after[2] == doctest::Approx(before[2]).epsilon(1e-13));
}

TEST_CASE("first-order shock tube run creates no new density extrema") {
  const SodResult res = run_sod(200, 0.23, 0.25, 1.5, /*first_order=*/true);
  for (double r : res.rho) {
    CHECK(r >= 0.125 - 1e-10);
    CHECK(r <= 1.0 + 1e-10);
  }
}

TEST_CASE("shock tube density error decreases monotonically under refinement") {
  const double e96 = run_sod(96).l1_rho;
  const double e192 = run_sod(192).l1_rho;
  const double e384 = run_sod(384).l1_rho;
  CHECK(e96 > e192);
  CHECK(e192 > e384);
}
