#include "lamb/euler.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "lamb/functionals.hpp"

namespace lamb {
namespace {

double mask_value(double index, double cutoff, DealiasFilter filter) {
  if (index >= cutoff) return 0.0;
  if (filter == DealiasFilter::sharp) return 1.0;
  const double kappa = index / cutoff;
  return std::exp(-36.0 * std::pow(kappa, 36));
}

void axpy(ScalarField& y, double a, const ScalarField& x) {
  auto yv = y.values();
  auto xv = x.values();
  for (std::size_t k = 0; k < yv.size(); ++k) yv[k] += a * xv[k];
}

ScalarField combine(const ScalarField& z, double a, const ScalarField& k) {
  ScalarField out = z;
  axpy(out, a, k);
  return out;
}

}  // namespace

EulerSolver::EulerSolver(const EvolveConfig& config) : config_(config), poisson_(config.grid) {
  if (!(config.dt > 0.0)) throw ValidationError("EvolveConfig: dt must be > 0");
  if (!(config.cfl_max > 0.0)) throw ValidationError("EvolveConfig: cfl_max must be > 0");
  if (!(config.dealias > 0.0 && config.dealias <= 1.0))
    throw ValidationError("EvolveConfig: dealias fraction must lie in (0, 1]");
  if (!std::isfinite(config.comoving_speed) || !std::isfinite(config.t_end))
    throw ValidationError("EvolveConfig: non-finite parameter");
  const SineFourier& tf = poisson_.transform();
  const double col_cut = config.dealias * config.grid.Nx() / 2.0;
  const double row_cut = config.dealias * config.grid.Ny();
  mask_col_.resize(tf.cols());
  mask_row_.resize(tf.rows());
  for (int m = 0; m < tf.cols(); ++m) mask_col_[m] = mask_value(m, col_cut, config.filter);
  for (int r = 0; r < tf.rows(); ++r) mask_row_[r] = mask_value(r + 1, row_cut, config.filter);
}

DiagnosticsRecord EulerSolver::diagnose(const ScalarField& zeta, double t) const {
  const ScalarField psi = poisson_.solve(zeta);
  const Grid2D& g = zeta.grid();
  double mass = 0.0, m1 = 0.0;
  for (int j = 0; j <= g.Ny(); ++j)
    for (int i = 0; i < g.Nx(); ++i) {
      const double w = g.weight(j) * zeta(i, j);
      mass += w;
      m1 += w * g.x1(i);
    }
  DiagnosticsRecord d;
  d.t = t;
  d.Z = enstrophy(zeta);
  d.P = impulse(zeta);
  d.E = kinetic_energy(zeta, psi);
  d.min_zeta = zeta.min();
  d.centroid_x1 = mass != 0.0 ? m1 / mass : 0.0;
  return d;
}

EulerState EulerSolver::initial_state(ScalarField zeta, double t) const {
  if (!(zeta.grid() == config_.grid)) throw ShapeError("initial_state: grid mismatch");
  if (!zeta.all_finite()) throw ValidationError("initial_state: non-finite vorticity");
  if (zeta.boundary_max_abs() > 1e-12 * zeta.max_abs())
    throw PreconditionError("initial_state: vorticity does not vanish on rows 0 and Ny");
  DiagnosticsRecord d = diagnose(zeta, t);
  return {t, std::move(zeta), d};
}

ScalarField EulerSolver::rhs(const ScalarField& zeta, double* max_speed) const {
  const SineFourier& tf = poisson_.transform();
  const std::complex<double> I(0.0, 1.0);
  Spectrum zh = tf.forward(zeta);
  for (int r = 0; r < zh.rows; ++r)
    for (int m = 0; m < zh.cols; ++m) zh(r, m) *= mask_row_[r] * mask_col_[m];
  const Spectrum ph = poisson_.solve_spectrum(zh);

  Spectrum a = tf.empty(), b = tf.empty(), c = tf.empty(), d = tf.empty();
  for (int r = 0; r < zh.rows; ++r) {
    const double k2 = tf.k2_row(r);
    for (int m = 0; m < zh.cols; ++m) {
      const double k1 = tf.k1_deriv(m);
      a(r, m) = k2 * ph(r, m);
      b(r, m) = -I * k1 * ph(r, m);
      c(r, m) = I * k1 * zh(r, m);
      d(r, m) = k2 * zh(r, m);
    }
  }
  ScalarField v1 = tf.cosine_eval(a);
  const ScalarField v2 = tf.sine_eval(b);
  const ScalarField z1 = tf.sine_eval(c);
  const ScalarField z2 = tf.cosine_eval(d);

  const double U = config_.comoving_speed;
  ScalarField nl(zeta.grid());
  auto nv = nl.values();
  auto v1v = v1.values();
  double umax = 0.0;
  for (std::size_t k = 0; k < nv.size(); ++k) {
    const double u1 = v1v[k] - U, u2 = v2.values()[k];
    nv[k] = u1 * z1.values()[k] + u2 * z2.values()[k];
    umax = std::max(umax, u1 * u1 + u2 * u2);
  }
  if (max_speed) *max_speed = std::sqrt(umax);

  Spectrum nh = tf.forward(nl);
  for (int r = 0; r < nh.rows; ++r)
    for (int m = 0; m < nh.cols; ++m) nh(r, m) *= -mask_row_[r] * mask_col_[m];
  return tf.sine_eval(nh);
}

EulerState EulerSolver::step(const EulerState& s, double dt) const {
  if (!(dt > 0.0)) throw ValidationError("step: dt must be > 0");
  double umax = 0.0;
  const ScalarField k1 = rhs(s.zeta, &umax);
  const Grid2D& g = config_.grid;
  const double h = std::min(g.dx(), g.dy());
  while (dt * umax / h > config_.cfl_max) {
    dt *= 0.5;
    if (dt < 1e-12) throw BlowUpError("step: CFL halving underflow", s);
  }
  const ScalarField k2 = rhs(combine(s.zeta, 0.5 * dt, k1));
  const ScalarField k3 = rhs(combine(s.zeta, 0.5 * dt, k2));
  const ScalarField k4 = rhs(combine(s.zeta, dt, k3));
  ScalarField z = s.zeta;
  axpy(z, dt / 6.0, k1);
  axpy(z, dt / 3.0, k2);
  axpy(z, dt / 3.0, k3);
  axpy(z, dt / 6.0, k4);
  if (!z.all_finite()) throw BlowUpError("step: non-finite vorticity at t = " + std::to_string(s.t), s);
  const double t = s.t + dt;
  DiagnosticsRecord d = diagnose(z, t);
  return {t, std::move(z), d};
}

RunResult EulerSolver::run(const EulerState& s0, double snapshot_every,
                           const Observer& observer) const {
  RunResult out;
  out.history.push_back(s0.diagnostics);
  const bool snaps = snapshot_every > 0.0;
  if (snaps) out.snapshots.push_back(s0);
  const double t_end = config_.t_end;
  const double eps = 1e-12 * std::max(1.0, std::fabs(t_end));
  double next_snap = snaps ? s0.t + snapshot_every : INFINITY;
  EulerState s = s0;
  while (s.t < t_end - eps) {
    const double target = std::min(t_end, next_snap);
    const double dt = std::min(config_.dt, target - s.t);
    s = step(s, dt);
    if (std::fabs(s.t - target) <= eps) {
      s.t = target;
      s.diagnostics.t = target;
    }
    out.history.push_back(s.diagnostics);
    if (snaps && s.t >= next_snap - eps) {
      out.snapshots.push_back(s);
      next_snap += snapshot_every;
    }
    if (observer && !observer(s)) break;
  }
  return out;
}

EulerState step(const EulerState& state, const EvolveConfig& config) {
  return EulerSolver(config).step(state);
}

RunResult run(const ScalarField& initial, const EvolveConfig& config, double snapshot_every) {
  const EulerSolver solver(config);
  return solver.run(solver.initial_state(initial), snapshot_every);
}

OddExtension::OddExtension(const ScalarField& upper) : upper_(upper) {
  double row0 = 0.0;
  for (int i = 0; i < upper.grid().Nx(); ++i) row0 = std::max(row0, std::fabs(upper(i, 0)));
  if (row0 > 1e-12 * upper.max_abs())
    throw PreconditionError("odd_extend: field does not vanish on the axis");
}

double OddExtension::operator()(int i, int j) const {
  return j >= 0 ? upper_(i, j) : -upper_(i, -j);
}

double OddExtension::at(Point x) const {
  const Grid2D& g = upper_.grid();
  long i = std::lround((x.x1 + g.Lx()) / g.dx());
  i = ((i % g.Nx()) + g.Nx()) % g.Nx();
  const long j = std::lround(x.x2 / g.dy());
  if (std::labs(j) > g.Ny()) return 0.0;
  return (*this)(static_cast<int>(i), static_cast<int>(j));
}

std::vector<double> OddExtension::values() const {
  const Grid2D& g = upper_.grid();
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(2 * g.Ny() + 1) * g.Nx());
  for (int j = -g.Ny(); j <= g.Ny(); ++j)
    for (int i = 0; i < g.Nx(); ++i) v.push_back((*this)(i, j));
  return v;
}

double OddExtension::integral() const {
  const Grid2D& g = upper_.grid();
  double total = 0.0;
  for (int j = 1; j <= g.Ny(); ++j) {
    double row = 0.0;
    for (int i = 0; i < g.Nx(); ++i) row += (*this)(i, j) + (*this)(i, -j);
    total += g.weight(j) * row;
  }
  return total;
}

OddExtension odd_extend(const ScalarField& upper) { return OddExtension(upper); }

}  // namespace lamb
