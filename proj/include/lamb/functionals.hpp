#pragma once

#include <random>

#include "lamb/grid.hpp"
#include "lamb/poisson.hpp"

namespace lamb {

double impulse(const ScalarField& omega);
double enstrophy(const ScalarField& omega);

// (1 / 2 lambda) |omega|_2^2 - E[omega].
double functional_I(const ScalarField& omega, double lambda);
double functional_I(const ScalarField& omega, double lambda, const PoissonSolver& solver);

double sharp_constant();  // sqrt(2 / (c0 sqrt(pi)))
double hls_constant();    // (3 / (8 pi))^(1/4)

struct InequalityReport {
  double ratio = 0.0;
  double bound_sharp = 0.0;
  double bound_hls = 0.0;
  bool satisfied_sharp = false;
  bool satisfied_hls = false;
};

// |grad psi|_2 / (|omega|_2^(1/2) |x2 omega|_1^(1/2)). The flags compare
// against bound + slack.
InequalityReport energy_ratio(const ScalarField& omega, double slack = 0.0);
InequalityReport energy_ratio(const ScalarField& omega, const PoissonSolver& solver,
                              double slack = 0.0);

struct InterpolationSides {
  double lhs = 0.0;  // |x2^alpha omega|_r
  double rhs = 0.0;  // |x2 omega|_1^alpha |omega|_2^(1 - alpha)
};

InterpolationSides weighted_interpolation_sides(const ScalarField& omega, double r);
bool weighted_interpolation_check(const ScalarField& omega, double r, double rel_slack = 1e-12);

struct LiftErrors {
  double gradient_l2 = 0.0;   // |grad phi|_{L2(R4)} vs sqrt(4 pi) |grad psi|_2
  double laplace_l2 = 0.0;    // |Lap phi|_{L2(R4)} vs sqrt(4 pi) |Lap psi|_2
  double laplace_l1 = 0.0;    // |Lap phi|_{L1(R4)} vs 4 pi |x2 Lap psi|_1
  bool lid_warning = false;   // omega not confined to the inner 80% of the box
};

// phi(y) = psi(y4, |y'|) / |y'| on R^4, reduced to the half-strip with
// weight 4 pi s^2.
LiftErrors lift_isometry_check(const ScalarField& omega);
LiftErrors lift_isometry_check(const ScalarField& omega, const PoissonSolver& solver);

// Sums of truncated Gaussians A (exp(-r^2 / 2 sigma^2) - exp(-2))_+, each
// supported in a disc of radius 2 sigma sitting at least 2 sigma above the axis.
struct BumpOptions {
  int max_bumps = 5;
  double sigma_min = 0.5;
  double sigma_max = 1.5;
  double x1_extent = 4.0;  // centres in |x1| <= x1_extent
  double x2_max = 6.0;     // disc tops below x2_max
  double amp_min = 0.2;
  double amp_max = 2.0;
};

ScalarField random_bump_field(const Grid2D& grid, std::mt19937_64& rng,
                              const BumpOptions& opt = {});

}  // namespace lamb
