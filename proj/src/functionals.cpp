#include "lamb/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lamb/errors.hpp"
#include "lamb/specfun.hpp"

namespace lamb {
namespace {

constexpr double four_pi = 4.0 * std::numbers::pi;

double weighted_abs(const ScalarField& f, double power) {
  const Grid2D& g = f.grid();
  double total = 0.0;
  for (int j = 0; j <= g.Ny(); ++j) {
    const double s = std::pow(g.x2(j), power);
    double row = 0.0;
    for (int i = 0; i < g.Nx(); ++i) row += std::fabs(f(i, j));
    total += g.weight(j) * s * row;
  }
  return total;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

double rel_err(double lhs, double rhs) {
  if (rhs == 0.0) return lhs == 0.0 ? 0.0 : INFINITY;
  return std::fabs(lhs - rhs) / rhs;
}

}  // namespace

double impulse(const ScalarField& omega) {
  const Grid2D& g = omega.grid();
  double total = 0.0;
  for (int j = 0; j <= g.Ny(); ++j) {
    double row = 0.0;
    for (int i = 0; i < g.Nx(); ++i) row += omega(i, j);
    total += g.weight(j) * g.x2(j) * row;
  }
  return total;
}

double enstrophy(const ScalarField& omega) { return integrate_product(omega, omega); }

double functional_I(const ScalarField& omega, double lambda, const PoissonSolver& solver) {
  if (!(lambda > 0.0)) throw ValidationError("functional_I: lambda must be > 0");
  const ScalarField psi = solver.solve(omega);
  return enstrophy(omega) / (2.0 * lambda) - kinetic_energy(omega, psi);
}

double functional_I(const ScalarField& omega, double lambda) {
  return functional_I(omega, lambda, PoissonSolver(omega.grid()));
}

double sharp_constant() {
  return std::sqrt(2.0 / (first_zero_j1() * std::sqrt(std::numbers::pi)));
}

double hls_constant() { return std::pow(3.0 / (8.0 * std::numbers::pi), 0.25); }

InequalityReport energy_ratio(const ScalarField& omega, const PoissonSolver& solver,
                              double slack) {
  const double z = enstrophy(omega);
  const double p = weighted_abs(omega, 1.0);
  if (z == 0.0 || p == 0.0) throw UndefinedRatioError("energy_ratio: zero field");
  const ScalarField psi = solver.solve(omega);
  const double grad2 = integrate_product(psi, omega);
  InequalityReport r;
  r.ratio = std::sqrt(std::max(grad2, 0.0)) / (std::pow(z, 0.25) * std::sqrt(p));
  r.bound_sharp = sharp_constant();
  r.bound_hls = hls_constant();
  r.satisfied_sharp = r.ratio <= r.bound_sharp + slack;
  r.satisfied_hls = r.ratio <= r.bound_hls + slack;
  return r;
}

InequalityReport energy_ratio(const ScalarField& omega, double slack) {
  return energy_ratio(omega, PoissonSolver(omega.grid()), slack);
}

InterpolationSides weighted_interpolation_sides(const ScalarField& omega, double r) {
  if (!(r >= 1.0 && r <= 2.0)) throw DomainError("weighted_interpolation: r not in [1, 2]");
  const double alpha = 2.0 / r - 1.0;
  const Grid2D& g = omega.grid();
  double lhs = 0.0;
  for (int j = 0; j <= g.Ny(); ++j) {
    const double s = std::pow(g.x2(j), alpha * r);
    double row = 0.0;
    for (int i = 0; i < g.Nx(); ++i) row += std::pow(std::fabs(omega(i, j)), r);
    lhs += g.weight(j) * s * row;
  }
  InterpolationSides out;
  out.lhs = std::pow(lhs, 1.0 / r);
  out.rhs = std::pow(weighted_abs(omega, 1.0), alpha) * std::pow(enstrophy(omega), 0.5 * (1.0 - alpha));
  return out;
}

bool weighted_interpolation_check(const ScalarField& omega, double r, double rel_slack) {
  const InterpolationSides s = weighted_interpolation_sides(omega, r);
  return s.lhs <= s.rhs * (1.0 + rel_slack);
}

LiftErrors lift_isometry_check(const ScalarField& omega, const PoissonSolver& solver) {
  const Grid2D& g = omega.grid();
  const int nx = g.Nx(), ny = g.Ny();
  const double dx = g.dx(), dy = g.dy();
  const ScalarField psi = solver.solve(omega);
  const Gradient grad = solver.gradient(psi);

  LiftErrors out;
  out.lid_warning = inner_mass_fraction(omega) < 0.99;

  // Gradient identity with phi_s = (s psi_s - psi)/s^2 and phi_4 = psi_1/s.
  double lhs1 = 0.0, rhs1 = 0.0;
  for (int j = 0; j <= ny; ++j) {
    const double s = g.x2(j);
    double row_l = 0.0, row_r = 0.0;
    for (int i = 0; i < nx; ++i) {
      const double p1 = grad.d1(i, j), ps = grad.d2(i, j);
      row_r += p1 * p1 + ps * ps;
      if (j > 0) {
        const double fs = (s * ps - psi(i, j)) / s;
        row_l += fs * fs + p1 * p1;
      }
    }
    lhs1 += g.weight(j) * row_l;
    rhs1 += g.weight(j) * row_r;
  }
  out.gradient_l2 = rel_err(std::sqrt(four_pi * lhs1), std::sqrt(four_pi * rhs1));

  // phi on rows -2..Ny+2; psi is odd about both x2 = 0 and x2 = Ly.
  const int pad = 2;
  std::vector<double> phi(static_cast<std::size_t>(ny + 1 + 2 * pad) * nx);
  auto phi_at = [&](int i, int j) -> double& {
    return phi[static_cast<std::size_t>(j + pad) * nx + i];
  };
  auto psi_ext = [&](int i, int j) {
    if (j < 0) return -psi(i, -j);
    if (j > ny) return -psi(i, 2 * ny - j);
    return psi(i, j);
  };
  for (int j = -pad; j <= ny + pad; ++j)
    for (int i = 0; i < nx; ++i)
      phi_at(i, j) = j == 0 ? grad.d2(i, 0) : psi_ext(i, j) / (j * dy);

  double lhs2 = 0.0, lhs3 = 0.0;
  for (int j = 1; j <= ny; ++j) {
    const double s = g.x2(j);
    double row2 = 0.0, row3 = 0.0;
    for (int i = 0; i < nx; ++i) {
      const int im1 = (i + nx - 1) % nx, im2 = (i + nx - 2) % nx;
      const int ip1 = (i + 1) % nx, ip2 = (i + 2) % nx;
      const double c = phi_at(i, j);
      const double f44 = (-phi_at(ip2, j) + 16.0 * phi_at(ip1, j) - 30.0 * c +
                          16.0 * phi_at(im1, j) - phi_at(im2, j)) / (12.0 * dx * dx);
      const double fss = (-phi_at(i, j + 2) + 16.0 * phi_at(i, j + 1) - 30.0 * c +
                          16.0 * phi_at(i, j - 1) - phi_at(i, j - 2)) / (12.0 * dy * dy);
      const double fs = (-phi_at(i, j + 2) + 8.0 * phi_at(i, j + 1) - 8.0 * phi_at(i, j - 1) +
                         phi_at(i, j - 2)) / (12.0 * dy);
      const double lap = fss + 2.0 * fs / s + f44;
      row2 += s * s * lap * lap;
      row3 += s * s * std::fabs(lap);
    }
    lhs2 += g.weight(j) * row2;
    lhs3 += g.weight(j) * row3;
  }
  out.laplace_l2 = rel_err(std::sqrt(four_pi * lhs2), std::sqrt(four_pi * enstrophy(omega)));
  out.laplace_l1 = rel_err(four_pi * lhs3, four_pi * weighted_abs(omega, 1.0));
  return out;
}

LiftErrors lift_isometry_check(const ScalarField& omega) {
  return lift_isometry_check(omega, PoissonSolver(omega.grid()));
}

ScalarField random_bump_field(const Grid2D& grid, std::mt19937_64& rng, const BumpOptions& opt) {
  const int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(opt.max_bumps));
  struct Bump {
    double c1, c2, sigma, amp;
  };
  std::vector<Bump> bumps;
  for (int k = 0; k < n; ++k) {
    Bump b;
    b.sigma = std::min(uniform(rng, opt.sigma_min, opt.sigma_max), 0.25 * opt.x2_max);
    b.c1 = uniform(rng, -opt.x1_extent, opt.x1_extent);
    b.c2 = uniform(rng, 2.0 * b.sigma, opt.x2_max - 2.0 * b.sigma);
    b.amp = uniform(rng, opt.amp_min, opt.amp_max);
    bumps.push_back(b);
  }
  const double floor = std::exp(-2.0);
  ScalarField f = ScalarField::sample(grid, [&](Point x) {
    double v = 0.0;
    for (const Bump& b : bumps) {
      const double d1 = x.x1 - b.c1, d2 = x.x2 - b.c2;
      const double e = std::exp(-(d1 * d1 + d2 * d2) / (2.0 * b.sigma * b.sigma)) - floor;
      if (e > 0.0) v += b.amp * e;
    }
    return v;
  });
  for (int i = 0; i < grid.Nx(); ++i) {
    f(i, 0) = 0.0;
    f(i, grid.Ny()) = 0.0;
  }
  return f;
}

}  // namespace lamb
