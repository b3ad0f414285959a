#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lamb/dipole.hpp"
#include "lamb/euler.hpp"

namespace lamb {

struct OrbitDistance {
  double distance = 0.0;
  // x1 position of the fitted dipole centre: zeta ~ omega_L(x - (best_shift, 0)).
  double best_shift = 0.0;
};

OrbitDistance orbit_distance(const ScalarField& zeta, const LambParams& p);

enum class PerturbationKind { gaussian_bump, impulse_rescale, core_dent };

PerturbationKind parse_perturbation_kind(const std::string& s);
std::string to_string(PerturbationKind k);

struct PerturbationSpec {
  PerturbationKind kind = PerturbationKind::gaussian_bump;
  double delta = 0.0;
  // Bump centre and width in units of the core radius a.
  double x1 = -0.3;
  double x2 = 0.5;
  double width = 0.25;
  // Centre jitter (units of a) drawn from the seed; 0 disables it.
  double jitter = 0.0;
  std::uint64_t seed = 1;
};

struct PerturbedField {
  ScalarField zeta;
  double clipped_mass = 0.0;  // integral of the negative part removed
};

// g is a Gaussian minus its mirror image below the axis, so it is smooth,
// odd-compatible and >= 0 in the upper half-plane; |g|_2 = 1.
// gaussian_bump: omega_L + delta g.
// impulse_rescale: (1 + delta / P) omega_L, impulse moved by delta.
// core_dent: (omega_L - delta g)_+.
PerturbedField make_perturbed(const LambParams& p, const Grid2D& grid, const PerturbationSpec& spec);

struct StabilitySample {
  double t = 0.0;
  double d = 0.0;
  double best_shift = 0.0;
  DiagnosticsRecord diagnostics;
};

struct StabilityReport {
  double d0 = 0.0;
  double d_max = 0.0;
  double clipped_mass = 0.0;
  std::vector<StabilitySample> samples;
  std::vector<DiagnosticsRecord> history;
  double max_drift_Z = 0.0;
  double max_drift_P = 0.0;
  double max_drift_E = 0.0;
  bool conservation_ok = false;  // all drifts <= 1e-3
};

// Comoving run at speed W for time T, distance every a / (4 W).
StabilityReport stability_experiment(const LambParams& p, const PerturbationSpec& pert, double T,
                                     EvolveConfig config);

}  // namespace lamb
