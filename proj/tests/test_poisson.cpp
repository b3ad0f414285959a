#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "lamb/dipole.hpp"
#include "lamb/errors.hpp"
#include "lamb/poisson.hpp"

using namespace lamb;

TEST_CASE("green kernel examples") {
  CHECK(green_kernel({0, 1}, {0, 1e3}) > 0.0);
  CHECK(green_kernel({0, 1}, {0, 2}) == doctest::Approx(std::log(9.0) / (4 * std::numbers::pi)).epsilon(1e-14));
  CHECK(green_kernel({2, 0}, {0.3, 1}) == 0.0);
  CHECK(green_kernel({1.5, 0.4}, {-0.2, 2.2}) == doctest::Approx(green_kernel({-0.2, 2.2}, {1.5, 0.4})).epsilon(1e-15));
  CHECK_THROWS_AS(green_kernel({1, 1}, {1, 1}), SingularityError);
  CHECK_THROWS_AS(green_kernel({1, -1}, {1, 1}), DomainError);
}

TEST_CASE("green kernel dominated by the power bound") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> lg(-3.0, 3.0), u(0.0, 1.0);
  int bad = 0;
  for (int k = 0; k < 100000; ++k) {
    const Point x{std::pow(10.0, lg(rng)) * (u(rng) - 0.5), std::pow(10.0, lg(rng))};
    const Point y{std::pow(10.0, lg(rng)) * (u(rng) - 0.5), std::pow(10.0, lg(rng))};
    const double alpha = u(rng);
    if (alpha <= 0.0 || (x.x1 == y.x1 && x.x2 == y.x2)) continue;
    if (!green_bound_check(x, y, alpha)) ++bad;
    if (!green_bound_check(x, y, 1.0)) ++bad;
  }
  CHECK(bad == 0);
  CHECK(green_bound_check({0, 1}, {0, 2}, 1.0));
  CHECK(green_kernel({0, 1}, {0, 2}) <= 2.0 / std::numbers::pi);
}

TEST_CASE("cell mean of log r^2") {
  for (auto [hx, hy] : {std::pair{1.0, 1.0}, {0.1, 0.3}, {2.0, 0.05}}) {
    auto inner = [&](double x) {
      return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
          [&](double y) { return std::log(x * x + y * y); }, 0.0, hy, 15, 1e-13);
    };
    const double num = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(inner, 0.0, hx, 15, 1e-13);
    CHECK(cell_mean_log_r2(hx, hy) == doctest::Approx(num / (hx * hy)).epsilon(1e-9));
  }
}

TEST_CASE("quadrature basics") {
  const Grid2D g(4.0, 4.0, 32, 32);
  const GreenQuadrature q(g);
  CHECK(q.apply(ScalarField(g)).max_abs() == 0.0);

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ScalarField a(g), b(g);
  for (int j = 1; j < g.Ny(); ++j)
    for (int i = 0; i < g.Nx(); ++i) {
      a(i, j) = u(rng);
      b(i, j) = u(rng);
    }
  const ScalarField lhs = q.apply(2.0 * a + b);
  const ScalarField rhs = 2.0 * q.apply(a) + q.apply(b);
  for (std::size_t k = 0; k < lhs.size(); ++k)
    CHECK(std::fabs(lhs.values()[k] - rhs.values()[k]) <= 1e-12 * (1 + std::fabs(rhs.values()[k])));

  const ScalarField psi = q.apply(a);
  for (int j = 1; j <= g.Ny(); ++j)
    for (int i = 0; i < g.Nx(); ++i) CHECK(psi(i, j) > 0.0);
  for (int i = 0; i < g.Nx(); ++i) CHECK(psi(i, 0) == 0.0);

  CHECK_THROWS_AS(GreenQuadrature(Grid2D(4.0, 4.0, 256, 256)), CostGuardError);
}

TEST_CASE("spectral solver on a single mode") {
  const Grid2D g(3.0, 5.0, 64, 64);
  const double k1 = 3 * std::numbers::pi / g.Lx(), k2 = 4 * std::numbers::pi / g.Ly();
  const ScalarField psi = ScalarField::sample(g, [&](Point x) { return std::cos(k1 * x.x1) * std::sin(k2 * x.x2); });
  ScalarField omega = (k1 * k1 + k2 * k2) * psi;
  for (int i = 0; i < g.Nx(); ++i) omega(i, 0) = omega(i, g.Ny()) = 0.0;
  const PoissonSolver solver(g);
  const ScalarField got = solver.solve(omega);
  double err = 0.0;
  for (std::size_t k = 0; k < got.size(); ++k) err = std::max(err, std::fabs(got.values()[k] - psi.values()[k]));
  CHECK(err < 1e-13);
  const Gradient grad = solver.gradient(got);
  double e1 = 0.0, e2 = 0.0;
  for (int j = 1; j < g.Ny(); ++j)
    for (int i = 0; i < g.Nx(); ++i) {
      const double x1 = g.x1(i), x2 = g.x2(j);
      e1 = std::max(e1, std::fabs(grad.d1(i, j) + k1 * std::sin(k1 * x1) * std::sin(k2 * x2)));
      e2 = std::max(e2, std::fabs(grad.d2(i, j) - k2 * std::cos(k1 * x1) * std::cos(k2 * x2)));
    }
  CHECK(e1 < 1e-12);
  CHECK(e2 < 1e-12);
}

TEST_CASE("solver preconditions") {
  const Grid2D g(3.0, 3.0, 32, 32);
  ScalarField w = ScalarField::sample(g, [](Point x) { return std::exp(-x.x1 * x.x1 - (x.x2 - 1.5) * (x.x2 - 1.5)); });
  for (int i = 0; i < g.Nx(); ++i) w(i, 0) = w(i, g.Ny()) = 0.0;
  CHECK_NOTHROW(solve_stream_spectral(w));
  w(3, 0) = 0.5;
  CHECK_THROWS_AS(solve_stream_spectral(w), PreconditionError);
  const PoissonSolver other(Grid2D(3.0, 3.0, 64, 32));
  w(3, 0) = 0.0;
  CHECK_THROWS_AS(other.solve(w), ShapeError);
  CHECK_THROWS_AS(Grid2D(3.0, 3.0, 48, 32), ValidationError);
}

TEST_CASE("spectral stream function of the dipole") {
  const LambParams p = lamb_params(1.0, 1.0);
  double prev = INFINITY;
  for (int n : {128, 256}) {
    const Grid2D g = lamb_box(p, n);
    const ScalarField w = sample_lamb_vorticity(p, g);
    const ScalarField psi = solve_stream_spectral(w);
    const ScalarField exact = ScalarField::sample(g, [&](Point x) { return lamb_stream(p, x); });
    // compare on the core region, away from the lid and the periodic images
    double num = 0.0, den = 0.0;
    for (int j = 0; j <= g.Ny(); ++j)
      for (int i = 0; i < g.Nx(); ++i)
        if (std::hypot(g.x1(i), g.x2(j)) < 2 * p.a) {
          num += std::pow(psi(i, j) - exact(i, j), 2);
          den += exact(i, j) * exact(i, j);
        }
    const double err = std::sqrt(num / den);
    MESSAGE("N=" << n << " core error " << err);
    CHECK(err < 2e-2);
    CHECK(err <= prev);
    prev = err;
  }
}

TEST_CASE("energy forms agree and scale") {
  const LambParams one = lamb_params(1.0, 1.0), four = lamb_params(4.0, 1.0);
  const Grid2D g = lamb_box(one, 256);
  const ScalarField w = sample_lamb_vorticity(one, g);
  const EnergyForms f = energy_forms(w, solve_stream_spectral(w));
  CHECK(f.relative_gap() < 1e-10);
  CHECK(f.product == doctest::Approx(lamb_invariants(one).E).epsilon(3e-3));
  const Grid2D g4 = lamb_box(four, 256);
  const ScalarField w4 = sample_lamb_vorticity(four, g4);
  const double E4 = kinetic_energy(w4, solve_stream_spectral(w4));
  CHECK(E4 == doctest::Approx(f.product / 4).epsilon(1e-10));
}

TEST_CASE("energy pairing is symmetric") {
  const Grid2D g(4.0, 4.0, 64, 64);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ScalarField a(g), b(g);
  for (int j = 1; j < g.Ny(); ++j)
    for (int i = 0; i < g.Nx(); ++i) {
      a(i, j) = u(rng);
      b(i, j) = u(rng);
    }
  const PoissonSolver s(g);
  const double ab = integrate_product(a, s.solve(b)), ba = integrate_product(b, s.solve(a));
  CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
  CHECK(integrate_product(a, s.solve(a)) > 0.0);
}

TEST_CASE("periodic box quadrature reproduces the spectral solve") {
  const LambParams p = lamb_params(1.0, 1.0);
  double prev = INFINITY;
  for (int n : {32, 64}) {
    const Grid2D g = lamb_box(p, n, 8.0);
    const ScalarField w = sample_lamb_vorticity(p, g);
    const double err = relative_l2(solve_stream_quadrature(w, GreenDomain::periodic_box), solve_stream_spectral(w));
    MESSAGE("N=" << n << " periodic-box error " << err);
    CHECK(err < 2e-2);
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("half-plane quadrature matches the exact stream function locally") {
  const LambParams p = lamb_params(1.0, 1.0);
  const Grid2D g = lamb_box(p, 64, 8.0);
  const ScalarField w = sample_lamb_vorticity(p, g);
  const ScalarField psi = solve_stream_quadrature(w);
  // the kernel integral is exact up to discretization for the untruncated support
  for (int i : {24, 32, 40})
    for (int j : {4, 8})
      CHECK(psi(i, j) == doctest::Approx(lamb_stream(p, {g.x1(i), g.x2(j)})).epsilon(2e-2));
}
