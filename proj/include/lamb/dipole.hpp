#pragma once

#include "lamb/grid.hpp"

namespace lamb {

struct LambParams {
  double lambda = 1.0;
  double W = 1.0;
  double c_L = 0.0;
  double a = 0.0;
};

struct LambInvariants {
  double E = 0.0;
  double Z = 0.0;
  double P = 0.0;
};

LambParams lamb_params(double lambda, double W);

// Comoving stream function Psi_L (tends to -W x2 at infinity).
double lamb_stream_total(const LambParams& p, Point x);
// Lab-frame stream function psi_L = Psi_L + W x2.
double lamb_stream(const LambParams& p, Point x);
double lamb_vorticity(const LambParams& p, Point x);
// Perpendicular gradient of Psi_L (comoving frame).
Vec2 lamb_velocity(const LambParams& p, Point x);
LambInvariants lamb_invariants(const LambParams& p);

// Square box with Lx = Ly = factor * a and N x N cells.
Grid2D lamb_box(const LambParams& p, int N, double factor = 16.0);

// omega_L(x1 + offset, x2) on the grid, with x1 + offset wrapped into the
// periodic cell.
ScalarField sample_lamb_vorticity(const LambParams& p, const Grid2D& grid, double offset = 0.0);

// Rescales a unit-dipole sample to (lambda, W): the result lives on the grid
// shrunk by 1/sqrt(lambda) and equals W sqrt(lambda) omega_L^{1,1}(sqrt(lambda) x).
ScalarField lamb_rescale(const ScalarField& base, double lambda, double W);

}  // namespace lamb
