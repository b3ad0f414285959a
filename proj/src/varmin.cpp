#include "lamb/varmin.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "lamb/functionals.hpp"
#include "lamb/specfun.hpp"

namespace lamb {
namespace {

double centroid_x1(const ScalarField& f) {
  const Grid2D& g = f.grid();
  double m = 0.0, m1 = 0.0;
  for (int j = 0; j <= g.Ny(); ++j)
    for (int i = 0; i < g.Nx(); ++i) {
      const double w = g.weight(j) * f(i, j);
      m += w;
      m1 += w * g.x1(i);
    }
  return m > 0.0 ? m1 / m : 0.0;
}

double update_impulse(const ScalarField& psi, double lambda, double W) {
  const Grid2D& g = psi.grid();
  double total = 0.0;
  for (int j = 1; j < g.Ny(); ++j) {
    const double x2 = g.x2(j);
    double row = 0.0;
    for (int i = 0; i < g.Nx(); ++i) {
      const double v = psi(i, j) - W * x2;
      if (v > 0.0) row += v;
    }
    total += g.weight(j) * x2 * lambda * row;
  }
  return total;
}

ScalarField positive_part(const ScalarField& psi, double lambda, double W) {
  const Grid2D& g = psi.grid();
  ScalarField out(g);
  for (int j = 1; j < g.Ny(); ++j)
    for (int i = 0; i < g.Nx(); ++i) {
      const double v = psi(i, j) - W * g.x2(j);
      out(i, j) = v > 0.0 ? lambda * v : 0.0;
    }
  return out;
}

void check_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(std::string(what) + " must be > 0");
}

}  // namespace

FixedPointUpdate el_fixed_point_step(const ScalarField& omega, double lambda, double mu,
                                     const PoissonSolver& solver, std::optional<double> recentre) {
  check_positive(lambda, "lambda");
  check_positive(mu, "mu");
  const SineFourier& tf = solver.transform();
  Spectrum h = solver.solve_spectrum(tf.forward(omega));
  if (recentre) {
    // psi(x1 + c): gauge the update so its centroid sits at the origin.
    for (int m = 0; m < h.cols; ++m) {
      const std::complex<double> phase = std::polar(1.0, tf.k1_col(m) * *recentre);
      for (int r = 0; r < h.rows; ++r) h(r, m) *= phase;
    }
  }
  const ScalarField psi = tf.sine_eval(h);
  const Grid2D& g = omega.grid();

  double w_hi = 0.0;
  for (int j = 1; j < g.Ny(); ++j)
    for (int i = 0; i < g.Nx(); ++i) w_hi = std::max(w_hi, psi(i, j) / g.x2(j));
  if (!(w_hi > 0.0) || update_impulse(psi, lambda, 0.0) < mu)
    throw BracketError("el_fixed_point_step: impulse equation has no root in [0, W_hi]");

  double lo = 0.0, hi = w_hi;
  while (hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (update_impulse(psi, lambda, mid) >= mu) lo = mid;
    else hi = mid;
  }
  const double W = 0.5 * (lo + hi);
  return {positive_part(psi, lambda, W), W};
}

FixedPointUpdate el_fixed_point_step(const ScalarField& omega, double lambda, double mu) {
  return el_fixed_point_step(omega, lambda, mu, PoissonSolver(omega.grid()));
}

double minimum_closed_form(double mu, double lambda) {
  check_positive(mu, "mu");
  check_positive(lambda, "lambda");
  const double c0 = first_zero_j1();
  return -mu * mu * lambda / (2.0 * c0 * c0 * std::numbers::pi);
}

MinimizeResult minimize(const MinimizeConfig& cfg) {
  check_positive(cfg.mu, "mu");
  check_positive(cfg.lambda, "lambda");
  check_positive(cfg.init_sigma, "init_sigma");
  if (!(cfg.tol_fixpoint > 0.0 && cfg.tol_fixpoint < 1.0) ||
      !(cfg.tol_impulse > 0.0 && cfg.tol_impulse < 1.0))
    throw ValidationError("minimize: tolerances must lie in (0, 1)");
  if (cfg.max_outer < 1) throw ValidationError("minimize: max_outer must be >= 1");

  const Grid2D& g = cfg.grid;
  const PoissonSolver solver(g);
  const double k = std::sqrt(cfg.lambda);
  const double c2 = 1.5 / k, sigma = cfg.init_sigma / k;
  ScalarField omega = ScalarField::sample(g, [&](Point x) {
    const double d2 = x.x2 - c2;
    return std::exp(-(x.x1 * x.x1 + d2 * d2) / (2.0 * sigma * sigma));
  });
  for (int i = 0; i < g.Nx(); ++i) {
    omega(i, 0) = 0.0;
    omega(i, g.Ny()) = 0.0;
  }
  omega *= cfg.mu / impulse(omega);

  MinimizeResult res{omega, 0.0, 0.0, 0.0, 0, 0.0, {}};
  res.initial_value = functional_I(omega, cfg.lambda, solver);
  MinimizeTelemetry& tel = res.telemetry;
  double prev_value = res.initial_value;
  bool converged = false;
  double W = 0.0;
  int it = 0;
  while (it < cfg.max_outer) {
    ++it;
    const double c = centroid_x1(omega);
    FixedPointUpdate up = el_fixed_point_step(omega, cfg.lambda, cfg.mu, solver, c);
    const double change = l2_norm(up.omega - omega) / l2_norm(up.omega);
    omega = std::move(up.omega);
    W = up.W;
    const double value = functional_I(omega, cfg.lambda, solver);
    tel.change.push_back(change);
    tel.W.push_back(W);
    tel.value.push_back(value);
    tel.centroid.push_back(c);
    if (value > prev_value) tel.ascent_steps.push_back(it);
    prev_value = value;
    if (change < cfg.tol_fixpoint) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw ConvergenceError("minimize: no convergence in " + std::to_string(cfg.max_outer) +
                               " iterations",
                           tel);
  const double P = impulse(omega);
  if (std::fabs(P - cfg.mu) > cfg.tol_impulse * cfg.mu)
    throw ConvergenceError("minimize: impulse constraint violated", tel);

  const ScalarField psi = solver.solve(omega);
  res.residual = l2_norm(omega - positive_part(psi, cfg.lambda, W)) / l2_norm(omega);
  res.omega = std::move(omega);
  res.W = W;
  res.value = tel.value.back();
  res.iterations = it;
  return res;
}

BesselFit bessel_profile_fit(const MinimizeResult& result, double lambda) {
  const ScalarField& omega = result.omega;
  const Grid2D& g = omega.grid();
  const PoissonSolver solver(g);
  const ScalarField psi = solver.solve(omega);
  const double c1 = centroid_x1(omega);
  const double k = std::sqrt(lambda);
  const double a = first_zero_j1() / k;
  double sbb = 0.0, sfb = 0.0, sff = 0.0;
  for (int j = 1; j < g.Ny(); ++j)
    for (int i = 0; i < g.Nx(); ++i) {
      const double d1 = g.x1(i) - c1, x2 = g.x2(j);
      const double r = std::hypot(d1, x2);
      if (r >= a) continue;
      const double f = psi(i, j) - result.W * x2;
      const double b = bessel_j(1, k * r) * x2 / r;
      const double w = g.weight(j);
      sbb += w * b * b;
      sfb += w * f * b;
      sff += w * f * f;
    }
  BesselFit fit;
  fit.C = sfb / sbb;
  fit.residual = std::sqrt(std::max(sff - fit.C * sfb, 0.0) / sff);
  return fit;
}

}  // namespace lamb
