#pragma once

#include <optional>
#include <vector>

#include "lamb/errors.hpp"
#include "lamb/grid.hpp"
#include "lamb/poisson.hpp"

namespace lamb {

struct MinimizeConfig {
  double mu = 0.0;
  double lambda = 1.0;
  Grid2D grid;
  int max_outer = 500;
  double tol_fixpoint = 1e-8;
  double tol_impulse = 1e-10;
  double init_sigma = 0.7;  // width of the initial bump, in units of 1/sqrt(lambda)
};

struct MinimizeTelemetry {
  std::vector<double> change;  // relative L2 change per iteration
  std::vector<double> W;
  std::vector<double> value;
  std::vector<double> centroid;  // x1-centroid removed at each step
  std::vector<int> ascent_steps;  // iterations where I_lambda increased
};

struct MinimizeResult {
  ScalarField omega;
  double W = 0.0;
  double value = 0.0;
  double initial_value = 0.0;
  int iterations = 0;
  double residual = 0.0;  // |omega - lambda (psi - W x2)_+|_2 / |omega|_2
  MinimizeTelemetry telemetry;
};

struct ConvergenceError : NumericalError {
  ConvergenceError(const std::string& what, MinimizeTelemetry t)
      : NumericalError(what), telemetry(std::move(t)) {}
  MinimizeTelemetry telemetry;
};

struct FixedPointUpdate {
  ScalarField omega;
  double W = 0.0;
};

// lambda (psi - W x2)_+ with W chosen so the impulse equals mu.
FixedPointUpdate el_fixed_point_step(const ScalarField& omega, double lambda, double mu);
FixedPointUpdate el_fixed_point_step(const ScalarField& omega, double lambda, double mu,
                                     const PoissonSolver& solver,
                                     std::optional<double> recentre = std::nullopt);

MinimizeResult minimize(const MinimizeConfig& config);

double minimum_closed_form(double mu, double lambda);

// Least-squares fit of Psi = psi - W x2 to C J1(sqrt(lambda) r) sin(theta)
// on r < a about the vorticity centroid. Returns the relative residual.
struct BesselFit {
  double C = 0.0;
  double residual = 0.0;
};
BesselFit bessel_profile_fit(const MinimizeResult& result, double lambda);

}  // namespace lamb
