#include <doctest.h>

#include <cmath>
#include <random>

#include "floodsim/grid.hpp"
#include "floodsim/limiter.hpp"
#include "floodsim/threading.hpp"
#include "floodsim/time_control.hpp"

using namespace floodsim;

TEST_CASE("sweby limiter basic values") {
  CHECK(sweby_limiter(1.0, -1.0, 1.5) == 0.0);
  CHECK(sweby_limiter(1.0, 1.0, 1.5) == doctest::Approx(1.0));
  CHECK(sweby_limiter(1.0, 2.0, 1.5) == doctest::Approx(1.5));
  CHECK(sweby_limiter(0.0, 1.0, 1.5) == 0.0);
}

TEST_CASE("sweby limiter symmetry and homogeneity") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> val(-3.0, 3.0);
  std::uniform_real_distribution<double> beta_d(1.0, 2.0);
  std::uniform_real_distribution<double> scale(0.01, 10.0);
  for (int k = 0; k < 2000; ++k) {
    const double a = val(rng), b = val(rng), beta = beta_d(rng);
    const double phi = sweby_limiter(a, b, beta);
    CHECK(phi == sweby_limiter(b, a, beta));
    const double c = scale(rng);
    CHECK(sweby_limiter(c * a, c * b, beta) == doctest::Approx(c * phi).epsilon(1e-13));
    if (a * b > 0.0) {
      // bounded by beta * min(|a|,|b|), same sign as inputs
      CHECK(std::fabs(phi) <= beta * std::fmin(std::fabs(a), std::fabs(b)) + 1e-14);
      CHECK(phi * a >= 0.0);
    }
  }
}

TEST_CASE("muscl reconstruction on simple fields") {
  const Grid2D g = Grid2D::make(6, 1, 0.0, 0.0, 6.0, 1.0);
  LimiterParams lp{1.5};

  CellField constant(g, 2.5);
  CellField s1 = muscl_reconstruct(constant, Axis::X, lp);
  for (double v : s1.v) CHECK(v == 0.0);

  CellField linear(g);
  for (int i = 0; i < g.nx; ++i) linear.at(i, 0) = 2.0 * g.cx(i);
  CellField s2 = muscl_reconstruct(linear, Axis::X, lp);
  for (int i = 1; i < g.nx - 1; ++i) CHECK(s2.at(i, 0) == doctest::Approx(2.0));
  CHECK(s2.at(0, 0) == 0.0);
  CHECK(s2.at(g.nx - 1, 0) == 0.0);
}

TEST_CASE("muscl slopes vanish at a plateau edge") {
  const Grid2D g = Grid2D::make(4, 1, 0.0, 0.0, 4.0, 1.0);
  CellField f(g);
  f.at(0, 0) = 0.0;
  f.at(1, 0) = 0.0;
  f.at(2, 0) = 1.0;
  f.at(3, 0) = 1.0;
  CellField s = muscl_reconstruct(f, Axis::X, LimiterParams{1.5});
  for (double v : s.v) CHECK(v == 0.0); // one-sided jumps give phi = 0
}

TEST_CASE("muscl keeps interface values within neighbor extrema") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  const Grid2D g = Grid2D::make(32, 1, 0.0, 0.0, 1.0, 1.0);
  LimiterParams lp{2.0}; // most aggressive
  for (int trial = 0; trial < 50; ++trial) {
    CellField f(g);
    for (double& v : f.v) v = val(rng);
    CellField s = muscl_reconstruct(f, Axis::X, lp);
    for (int i = 1; i < g.nx - 1; ++i) {
      const double lo = std::fmin(f.at(i - 1, 0), std::fmin(f.at(i, 0), f.at(i + 1, 0)));
      const double hi = std::fmax(f.at(i - 1, 0), std::fmax(f.at(i, 0), f.at(i + 1, 0)));
      const double left = f.at(i, 0) - 0.5 * g.dx * s.at(i, 0);
      const double right = f.at(i, 0) + 0.5 * g.dx * s.at(i, 0);
      CHECK(left >= lo - 1e-12);
      CHECK(left <= hi + 1e-12);
      CHECK(right >= lo - 1e-12);
      CHECK(right <= hi + 1e-12);
    }
  }
}

TEST_CASE("muscl needs at least three cells along the axis") {
  const Grid2D g = Grid2D::make(2, 1, 0.0, 0.0, 2.0, 1.0);
  CellField f(g);
  f.at(0, 0) = 0.0;
  f.at(1, 0) = 5.0;
  CellField s = muscl_reconstruct(f, Axis::X, LimiterParams{1.5});
  for (double v : s.v) CHECK(v == 0.0);
}

TEST_CASE("cfl time step") {
  const Grid2D g = Grid2D::make(10, 10, 0.0, 0.0, 1.0, 1.0);
  CHECK(compute_dt_cfl(2.0, g, 0.25) == doctest::Approx(0.0125).epsilon(1e-14));
  CHECK(compute_dt_cfl(0.0, g, 0.5, 1e-2) == 1e-2);
  CHECK_THROWS_AS(compute_dt_cfl(std::nan(""), g, 0.5), NonFiniteState);
  CHECK_THROWS_AS(compute_dt_cfl(-1.0, g, 0.5), NonFiniteState);

  // monotone decreasing in the signal speed
  double prev = compute_dt_cfl(0.1, g, 0.5);
  for (double s = 0.2; s < 3.0; s += 0.1) {
    const double dt = compute_dt_cfl(s, g, 0.5);
    CHECK(dt < prev);
    prev = dt;
  }
}

TEST_CASE("cfl time step matches the shock tube initial data") {
  // both initial states are at rest; the fastest signal is the left sound speed
  const Grid2D g = Grid2D::make(384, 1, 0.0, 0.0, 1.0, 1.0);
  const double c_left = std::sqrt(1.4 * 1.0 / 1.0);
  CHECK(compute_dt_cfl(c_left, g, 0.25) ==
        doctest::Approx(0.25 * (1.0 / 384.0) / std::sqrt(1.4)).epsilon(1e-14));
}

TEST_CASE("heun advance") {
  auto zero = [](double) { return 0.0; };
  CHECK(heun_advance(3.0, zero, 0.7) == 3.0);

  auto one = [](double) { return 1.0; };
  CHECK(heun_advance(0.0, one, 0.5) == doctest::Approx(0.5).epsilon(1e-15));

  auto identity = [](double u) { return u; };
  CHECK(heun_advance(1.0, identity, 0.1) == doctest::Approx(1.105).epsilon(1e-14));

  // third-order local error: halving dt scales the error by ~8
  const double e1 = std::fabs(heun_advance(1.0, identity, 0.1) - std::exp(0.1));
  const double e2 = std::fabs(heun_advance(1.0, identity, 0.05) - std::exp(0.05));
  const double ratio = e1 / e2;
  CHECK(ratio > 6.0);
  CHECK(ratio < 10.0);
}

TEST_CASE("heun propagates rhs errors") {
  auto bad = [](double) -> double { throw NonFiniteState("rhs blew up"); };
  CHECK_THROWS_AS(heun_advance(1.0, bad, 0.1), NonFiniteState);
}

TEST_CASE("grid invariants") {
  CHECK_THROWS_AS(Grid2D::make(0, 1, 0, 0, 1, 1), ValidationError);
  CHECK_THROWS_AS(Grid2D::make(4, 4, 0, 0, 0, 1), ValidationError);
  const Grid2D g = Grid2D::make(8, 4, -1.0, 0.0, 1.0, 1.0);
  CHECK(g.dx == doctest::Approx(0.25));
  CHECK(g.dy == doctest::Approx(0.25));
  CHECK(g.cells() == 32);
}

TEST_CASE("check_finite reports the offending cell") {
  std::vector<double> v{1.0, 2.0, std::nan("")};
  CHECK_THROWS_AS(check_finite(v, "field"), NonFiniteState);
}

TEST_CASE("parallel_rows covers the range once for any worker count") {
  for (int workers : {1, 3}) {
    set_worker_count(workers);
    std::vector<int> hits(17, 0);
    parallel_rows(17, [&](int b, int e) {
      for (int j = b; j < e; ++j) hits[j] += 1;
    });
    for (int h : hits) CHECK(h == 1);
  }
  set_worker_count(1);
}
