#include "lamb/dipole.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lamb/errors.hpp"
#include "lamb/specfun.hpp"

namespace lamb {
namespace {

double wrap_x1(double x1, double Lx) {
  return x1 - 2.0 * Lx * std::floor((x1 + Lx) / (2.0 * Lx));
}

// g(r) = f(r)/r and g'(r) for Psi_L = g(r) x2.
struct Radial {
  double g;
  double dg;
};

Radial radial(const LambParams& p, double r) {
  const double k = std::sqrt(p.lambda);
  if (r <= p.a) {
    const double z = k * r;
    if (z < 1e-3) {
      const double z2 = z * z;
      return {p.c_L * k * (0.5 - z2 / 16.0), p.c_L * k * k * (-z / 8.0 + z * z2 / 96.0)};
    }
    const double j0 = bessel_j(0, z);
    const double j1 = bessel_j(1, z);
    return {p.c_L * j1 / r, p.c_L * k * (j0 - 2.0 * j1 / z) / r};
  }
  const double a2 = p.a * p.a;
  return {-p.W * (1.0 - a2 / (r * r)), -2.0 * p.W * a2 / (r * r * r)};
}

}  // namespace

LambParams lamb_params(double lambda, double W) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ValidationError("lambda must be > 0");
  if (!(W > 0.0) || !std::isfinite(W)) throw ValidationError("W must be > 0");
  const double c0 = first_zero_j1();
  LambParams p;
  p.lambda = lambda;
  p.W = W;
  p.a = c0 / std::sqrt(lambda);
  p.c_L = -2.0 * W / (std::sqrt(lambda) * bessel_j(0, c0));
  return p;
}

double lamb_stream_total(const LambParams& p, Point x) {
  if (x.x2 < 0.0) throw DomainError("lamb_stream_total: x2 < 0");
  const double r = std::hypot(x.x1, x.x2);
  if (r == 0.0) return 0.0;
  const double s = x.x2 / r;
  if (r <= p.a) return p.c_L * bessel_j(1, std::sqrt(p.lambda) * r) * s;
  return -p.W * (r - p.a * p.a / r) * s;
}

double lamb_stream(const LambParams& p, Point x) {
  return lamb_stream_total(p, x) + p.W * x.x2;
}

double lamb_vorticity(const LambParams& p, Point x) {
  if (x.x2 < 0.0) throw DomainError("lamb_vorticity: x2 < 0");
  if (std::hypot(x.x1, x.x2) > p.a) return 0.0;
  return p.lambda * std::max(lamb_stream_total(p, x), 0.0);
}

Vec2 lamb_velocity(const LambParams& p, Point x) {
  if (x.x2 < 0.0) throw DomainError("lamb_velocity: x2 < 0");
  const double r = std::hypot(x.x1, x.x2);
  if (r == 0.0) {
    const double k = std::sqrt(p.lambda);
    return {p.c_L * k * 0.5, 0.0};
  }
  const Radial g = radial(p, r);
  const double d1 = g.dg * x.x1 * x.x2 / r;
  const double d2 = g.g + g.dg * x.x2 * x.x2 / r;
  return {d2, -d1};
}

LambInvariants lamb_invariants(const LambParams& p) {
  const double c0 = first_zero_j1();
  const double base = c0 * c0 * std::numbers::pi;
  return {base * p.W * p.W / p.lambda, base * p.W * p.W, base * p.W / p.lambda};
}

Grid2D lamb_box(const LambParams& p, int N, double factor) {
  return Grid2D(factor * p.a, factor * p.a, N, N);
}

ScalarField sample_lamb_vorticity(const LambParams& p, const Grid2D& grid, double offset) {
  return ScalarField::sample(grid, [&](Point x) {
    return lamb_vorticity(p, {wrap_x1(x.x1 + offset, grid.Lx()), x.x2});
  });
}

ScalarField lamb_rescale(const ScalarField& base, double lambda, double W) {
  const LambParams p = lamb_params(lambda, W);
  const Grid2D& g = base.grid();
  const double c0 = first_zero_j1();
  if (c0 / std::max(g.dx(), g.dy()) < 8.0)
    throw ResolutionError("lamb_rescale: core radius spans fewer than 8 cells");
  const double k = std::sqrt(lambda);
  const Grid2D scaled(g.Lx() / k, g.Ly() / k, g.Nx(), g.Ny());
  std::vector<double> v(base.values().begin(), base.values().end());
  for (double& x : v) x *= W * k;
  ScalarField out(scaled, std::move(v));
  const double tol = 1e-10 * std::max(1.0, out.max_abs());
  for (int j = 0; j <= scaled.Ny(); ++j)
    for (int i = 0; i < scaled.Nx(); ++i) {
      const double direct = lamb_vorticity(p, {scaled.x1(i), scaled.x2(j)});
      if (std::fabs(direct - out(i, j)) > tol)
        throw PreconditionError("lamb_rescale: base is not a sample of the unit dipole");
    }
  return out;
}

}  // namespace lamb
