#include "lamb/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "lamb/errors.hpp"
#include "lamb/parallel.hpp"

namespace lamb {
namespace {

constexpr double inv4pi = 0.25 / std::numbers::pi;

void check_upper(Point x, Point y, const char* who) {
  if (x.x2 < 0.0 || y.x2 < 0.0) throw DomainError(std::string(who) + ": point below the axis");
  if (x.x1 == y.x1 && x.x2 == y.x2) throw SingularityError(std::string(who) + ": x = y");
}

// Image term of the x1-periodic free-space kernel, up to a constant that
// cancels between the paired images: -(1/4pi) log(cosh t - cos u).
struct StripTerm {
  double t, e1, e2;
};

StripTerm strip_term(double d2, double period) {
  const double t = 2.0 * std::numbers::pi * std::fabs(d2) / period;
  const double e1 = std::exp(-t);
  return {t, e1, e1 * e1};
}

double strip_value(const StripTerm& s, double cos_u) {
  return -inv4pi * (s.t + std::log(0.5 * (1.0 + s.e2) - cos_u * s.e1));
}

}  // namespace

double green_kernel(Point x, Point y) {
  check_upper(x, y, "green_kernel");
  const double d1 = x.x1 - y.x1, d2 = x.x2 - y.x2;
  return inv4pi * std::log1p(4.0 * x.x2 * y.x2 / (d1 * d1 + d2 * d2));
}

bool green_bound_check(Point x, Point y, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("green_bound_check: alpha not in (0,1]");
  const double g = green_kernel(x, y);
  const double d1 = x.x1 - y.x1, d2 = x.x2 - y.x2;
  const double t = 4.0 * x.x2 * y.x2 / (d1 * d1 + d2 * d2);
  const double bound = inv4pi * std::pow(t, alpha) / alpha;
  return g <= bound * (1.0 + 4.0 * std::numeric_limits<double>::epsilon());
}

double cell_mean_log_r2(double hx, double hy) {
  return std::log(hx * hx + hy * hy) - 3.0 + (hx / hy) * std::atan(hy / hx) +
         (hy / hx) * std::atan(hx / hy);
}

GreenQuadrature::GreenQuadrature(const Grid2D& grid, GreenDomain domain)
    : grid_(grid), domain_(domain) {
  if (static_cast<long>(grid.Nx()) * grid.Ny() > max_nodes)
    throw CostGuardError("solve_stream_quadrature: grid " + std::to_string(grid.Nx()) + "x" +
                         std::to_string(grid.Ny()) + " exceeds the quadrature cost guard");
  table_.assign(static_cast<std::size_t>(grid.Nx()) * (grid.Ny() + 1) * (grid.Ny() + 1), 0.0);
  if (domain == GreenDomain::half_plane) build_half_plane();
  else build_periodic_box();
}

void GreenQuadrature::build_half_plane() {
  const int nx = grid_.Nx(), ny = grid_.Ny();
  const double dx = grid_.dx(), dy = grid_.dy();
  const double diag_log = cell_mean_log_r2(0.5 * dx, 0.5 * dy);
  for (int di = 0; di < nx; ++di)
    for (int j = 1; j <= ny; ++j)
      for (int l = 1; l <= ny; ++l) {
        const double x2 = grid_.x2(j), y2 = grid_.x2(l);
        double g;
        if (di == 0 && j == l) {
          g = inv4pi * (std::log(4.0 * x2 * x2) - diag_log);
        } else {
          g = green_kernel({di * dx, x2}, {0.0, y2});
        }
        entry(di, j, l) = grid_.weight(l) * g;
      }
}

void GreenQuadrature::build_periodic_box() {
  const int nx = grid_.Nx(), ny = grid_.Ny();
  const double dx = grid_.dx(), Ly = grid_.Ly();
  const double p = 2.0 * grid_.Lx();
  const int M = 1 + static_cast<int>(std::ceil(40.0 * p / (4.0 * std::numbers::pi * Ly)));
  const double diag_log = cell_mean_log_r2(0.5 * dx, 0.5 * grid_.dy());
  const double self_reg = -inv4pi * std::log(2.0 * std::numbers::pi * std::numbers::pi / (p * p));

  std::vector<double> cos_u(nx);
  for (int di = 0; di < nx; ++di) cos_u[di] = std::cos(2.0 * std::numbers::pi * di * dx / p);

  std::vector<StripTerm> plus, minus;
  for (int j = 1; j < ny; ++j)
    for (int l = 1; l < ny; ++l) {
      const double x2 = grid_.x2(j), y2 = grid_.x2(l);
      const double lid = x2 / Ly;
      // S(x, y) - (x2/Ly) S((x1, Ly), y) as signed image terms.
      plus.clear();
      minus.clear();
      bool self = false;
      for (int n = -M; n <= M; ++n) {
        const double a = x2 - y2 - 2.0 * Ly * n;
        if (n == 0 && j == l) self = true;
        else plus.push_back(strip_term(a, p));
        minus.push_back(strip_term(x2 + y2 - 2.0 * Ly * n, p));
      }
      std::vector<StripTerm> lid_plus, lid_minus;
      for (int n = -M; n <= M; ++n) {
        lid_plus.push_back(strip_term(Ly - y2 - 2.0 * Ly * n, p));
        lid_minus.push_back(strip_term(Ly + y2 - 2.0 * Ly * n, p));
      }
      for (int di = 0; di < nx; ++di) {
        const double cu = cos_u[di];
        double s = 0.0;
        for (const auto& t : plus) s += strip_value(t, cu);
        for (const auto& t : minus) s -= strip_value(t, cu);
        if (self) {
          if (di == 0) s += self_reg - inv4pi * diag_log;
          else s += strip_value(strip_term(0.0, p), cu);
        }
        double sl = 0.0;
        for (const auto& t : lid_plus) sl += strip_value(t, cu);
        for (const auto& t : lid_minus) sl -= strip_value(t, cu);
        entry(di, j, l) = grid_.weight(l) * (s - lid * sl);
      }
    }
}

ScalarField GreenQuadrature::apply(const ScalarField& omega) const {
  if (!(omega.grid() == grid_)) throw ShapeError("GreenQuadrature: grid mismatch");
  const int nx = grid_.Nx(), ny = grid_.Ny();
  const bool periodic = domain_ == GreenDomain::periodic_box;

  struct Span {
    int l, lo, hi;
  };
  std::vector<Span> rows;
  for (int l = 0; l <= ny; ++l) {
    int lo = nx, hi = -1;
    for (int i = 0; i < nx; ++i)
      if (omega(i, l) != 0.0) {
        lo = std::min(lo, i);
        hi = std::max(hi, i);
      }
    if (hi >= 0) rows.push_back({l, lo, hi});
  }

  ScalarField psi(grid_);
  parallel_for(0, static_cast<std::size_t>(ny + 1), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    for (int i = 0; i < nx; ++i) {
      double acc = 0.0;
      for (const Span& r : rows)
        for (int k = r.lo; k <= r.hi; ++k) {
          int di = i - k;
          if (periodic) di = (di + nx) % nx;
          else di = di < 0 ? -di : di;
          acc += entry(di, j, r.l) * omega(k, r.l);
        }
      psi(i, j) = acc;
    }
  });
  return psi;
}

ScalarField solve_stream_quadrature(const ScalarField& omega, GreenDomain domain) {
  return GreenQuadrature(omega.grid(), domain).apply(omega);
}

PoissonSolver::PoissonSolver(const Grid2D& grid) : transform_(grid) {}

Spectrum PoissonSolver::solve_spectrum(const Spectrum& w) const {
  Spectrum out = w;
  const int nyq = grid().Nx() / 2;
  for (int r = 0; r < out.rows; ++r) {
    const double k2 = transform_.k2_row(r);
    for (int m = 0; m < out.cols; ++m) {
      const double k1 = transform_.k1_col(m);
      out(r, m) = m == nyq ? 0.0 : out(r, m) / (k1 * k1 + k2 * k2);
    }
  }
  return out;
}

ScalarField PoissonSolver::solve(const ScalarField& omega) const {
  if (!(omega.grid() == grid())) throw ShapeError("PoissonSolver: grid mismatch");
  if (omega.boundary_max_abs() > 1e-12 * omega.max_abs())
    throw PreconditionError("solve_stream_spectral: omega does not vanish on rows 0 and Ny");
  return transform_.sine_eval(solve_spectrum(transform_.forward(omega)));
}

Gradient PoissonSolver::gradient(const ScalarField& psi) const {
  const Spectrum h = transform_.forward(psi);
  Spectrum a = h, b = h;
  const std::complex<double> I(0.0, 1.0);
  for (int r = 0; r < h.rows; ++r)
    for (int m = 0; m < h.cols; ++m) {
      a(r, m) = I * transform_.k1_deriv(m) * h(r, m);
      b(r, m) = transform_.k2_row(r) * h(r, m);
    }
  return {transform_.sine_eval(a), transform_.cosine_eval(b)};
}

ScalarField solve_stream_spectral(const ScalarField& omega) {
  return PoissonSolver(omega.grid()).solve(omega);
}

double EnergyForms::relative_gap() const {
  const double scale = std::max(std::fabs(product), std::fabs(gradient));
  return scale == 0.0 ? 0.0 : std::fabs(product - gradient) / scale;
}

double kinetic_energy(const ScalarField& omega, const ScalarField& psi) {
  return 0.5 * integrate_product(psi, omega);
}

EnergyForms energy_forms(const ScalarField& omega, const ScalarField& psi,
                         const PoissonSolver& solver) {
  require_same_grid(omega, psi);
  const Gradient g = solver.gradient(psi);
  return {kinetic_energy(omega, psi),
          0.5 * (integrate_product(g.d1, g.d1) + integrate_product(g.d2, g.d2))};
}

EnergyForms energy_forms(const ScalarField& omega, const ScalarField& psi) {
  return energy_forms(omega, psi, PoissonSolver(omega.grid()));
}

}  // namespace lamb
