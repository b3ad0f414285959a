#pragma once

#include <functional>
#include <vector>

#include "lamb/errors.hpp"
#include "lamb/grid.hpp"
#include "lamb/poisson.hpp"

namespace lamb {

enum class DealiasFilter {
  sharp,   // keep |m| < f Nx/2 and q < f Ny
  smooth,  // exp(-36 kappa^36) roll-off inside the same cutoff
};

struct EvolveConfig {
  Grid2D grid;
  double dt = 0.01;
  double t_end = 1.0;
  double cfl_max = 0.5;
  double dealias = 2.0 / 3.0;
  double comoving_speed = 0.0;
  DealiasFilter filter = DealiasFilter::sharp;
};

struct DiagnosticsRecord {
  double t = 0.0;
  double Z = 0.0;
  double P = 0.0;
  double E = 0.0;
  double min_zeta = 0.0;
  double centroid_x1 = 0.0;
};

struct EulerState {
  double t = 0.0;
  ScalarField zeta;
  DiagnosticsRecord diagnostics;
};

struct BlowUpError : NumericalError {
  BlowUpError(const std::string& what, EulerState last)
      : NumericalError(what), last_good(std::move(last)) {}
  EulerState last_good;
};

struct RunResult {
  std::vector<DiagnosticsRecord> history;
  std::vector<EulerState> snapshots;
};

class EulerSolver {
 public:
  explicit EulerSolver(const EvolveConfig& config);

  const EvolveConfig& config() const { return config_; }
  const PoissonSolver& poisson() const { return poisson_; }

  EulerState initial_state(ScalarField zeta, double t = 0.0) const;
  DiagnosticsRecord diagnose(const ScalarField& zeta, double t) const;

  // One RK4 step of at most dt (halved until the CFL bound holds).
  EulerState step(const EulerState& s, double dt) const;
  EulerState step(const EulerState& s) const { return step(s, config_.dt); }

  // Called after every step; return false to stop early.
  using Observer = std::function<bool(const EulerState&)>;

  // Steps from s to config.t_end, landing exactly on every multiple of
  // snapshot_every (<= 0 disables snapshots).
  RunResult run(const EulerState& s, double snapshot_every, const Observer& observer = {}) const;

  // Right-hand side -(v - U e1) . grad zeta; also reports max |v - U e1|.
  ScalarField rhs(const ScalarField& zeta, double* max_speed = nullptr) const;

 private:
  EvolveConfig config_;
  PoissonSolver poisson_;
  std::vector<double> mask_row_, mask_col_;
};

EulerState step(const EulerState& state, const EvolveConfig& config);
RunResult run(const ScalarField& initial, const EvolveConfig& config, double snapshot_every);

// Full-plane field on rows -Ny..Ny obtained by odd reflection.
class OddExtension {
 public:
  explicit OddExtension(const ScalarField& upper);
  const Grid2D& grid() const { return upper_.grid(); }
  double operator()(int i, int j) const;  // j in [-Ny, Ny]
  double at(Point x) const;                // nearest node, x2 may be negative
  std::vector<double> values() const;      // rows -Ny..Ny, x1 inner
  double integral() const;

 private:
  ScalarField upper_;
};

OddExtension odd_extend(const ScalarField& upper);

}  // namespace lamb
