#pragma once

#include <memory>
#include <vector>

#include "lamb/grid.hpp"
#include "lamb/spectral.hpp"

namespace lamb {

// Dirichlet Green function of the upper half-plane.
double green_kernel(Point x, Point y);
// G(x, y) <= (4 x2 y2 / |x - y|^2)^alpha / (4 pi alpha); alpha = 1 gives
// x2 y2 / (pi |x - y|^2).
bool green_bound_check(Point x, Point y, double alpha = 1.0);

enum class GreenDomain {
  half_plane,    // exact half-plane kernel, no truncation
  periodic_box,  // image-sum kernel of the periodic strip with a lid at Ly
};

// Midpoint quadrature of the Green integral with a precomputed kernel table.
class GreenQuadrature {
 public:
  static constexpr long max_nodes = 1L << 14;

  explicit GreenQuadrature(const Grid2D& grid, GreenDomain domain = GreenDomain::half_plane);
  ScalarField apply(const ScalarField& omega) const;
  const Grid2D& grid() const { return grid_; }

 private:
  double& entry(int di, int j, int l) {
    return table_[(static_cast<std::size_t>(di) * (grid_.Ny() + 1) + j) * (grid_.Ny() + 1) + l];
  }
  double entry(int di, int j, int l) const {
    return table_[(static_cast<std::size_t>(di) * (grid_.Ny() + 1) + j) * (grid_.Ny() + 1) + l];
  }
  void build_half_plane();
  void build_periodic_box();

  Grid2D grid_;
  GreenDomain domain_;
  std::vector<double> table_;
};

ScalarField solve_stream_quadrature(const ScalarField& omega,
                                    GreenDomain domain = GreenDomain::half_plane);

struct Gradient {
  ScalarField d1;
  ScalarField d2;
};

// -Laplace(psi) = omega, periodic in x1, psi = 0 at x2 = 0 and x2 = Ly.
class PoissonSolver {
 public:
  explicit PoissonSolver(const Grid2D& grid);

  const Grid2D& grid() const { return transform_.grid(); }
  const SineFourier& transform() const { return transform_; }

  ScalarField solve(const ScalarField& omega) const;
  Spectrum solve_spectrum(const Spectrum& omega_hat) const;
  Gradient gradient(const ScalarField& psi) const;

 private:
  SineFourier transform_;
};

ScalarField solve_stream_spectral(const ScalarField& omega);

struct EnergyForms {
  double product = 0.0;   // 1/2 quad(psi omega)
  double gradient = 0.0;  // 1/2 quad(|grad psi|^2)
  double relative_gap() const;
};

double kinetic_energy(const ScalarField& omega, const ScalarField& psi);
EnergyForms energy_forms(const ScalarField& omega, const ScalarField& psi,
                         const PoissonSolver& solver);
EnergyForms energy_forms(const ScalarField& omega, const ScalarField& psi);

// Mean of log(r^2) over the rectangle [-hx, hx] x [-hy, hy].
double cell_mean_log_r2(double hx, double hy);

}  // namespace lamb
