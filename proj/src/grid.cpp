#include "lamb/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lamb/errors.hpp"

namespace lamb {
namespace {

bool power_of_two_at_least_16(int n) {
  return n >= 16 && (n & (n - 1)) == 0;
}

}  // namespace

Grid2D::Grid2D(double Lx, double Ly, int Nx, int Ny)
    : Lx_(Lx), Ly_(Ly), Nx_(Nx), Ny_(Ny), dx_(2.0 * Lx / Nx), dy_(Ly / Ny) {
  if (!(Lx > 0.0) || !(Ly > 0.0) || !std::isfinite(Lx) || !std::isfinite(Ly))
    throw ValidationError("Grid2D: Lx and Ly must be positive");
  if (!power_of_two_at_least_16(Nx) || !power_of_two_at_least_16(Ny))
    throw ValidationError("Grid2D: Nx and Ny must be powers of two >= 16, got " +
                          std::to_string(Nx) + "x" + std::to_string(Ny));
}

double Grid2D::weight(int j) const {
  const double w = dx_ * dy_;
  return (j == 0 || j == Ny_) ? 0.5 * w : w;
}

double Grid2D::k1(int m) const { return std::numbers::pi * m / Lx_; }
double Grid2D::k2(int q) const { return std::numbers::pi * q / Ly_; }

ScalarField::ScalarField(const Grid2D& grid) : grid_(grid), values_(grid.size(), 0.0) {}

ScalarField::ScalarField(const Grid2D& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw ShapeError("ScalarField: expected " + std::to_string(grid_.size()) + " values, got " +
                     std::to_string(values_.size()));
}

bool ScalarField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }
double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::fabs(v));
  return m;
}

double ScalarField::boundary_max_abs() const {
  double m = 0.0;
  for (int i = 0; i < grid_.Nx(); ++i)
    m = std::max({m, std::fabs((*this)(i, 0)), std::fabs((*this)(i, grid_.Ny()))});
  return m;
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  require_same_grid(*this, o);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += o.values_[k];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  require_same_grid(*this, o);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= o.values_[k];
  return *this;
}

ScalarField& ScalarField::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

void require_same_grid(const ScalarField& a, const ScalarField& b) {
  if (!(a.grid() == b.grid())) throw ShapeError("fields live on different grids");
}

double integrate(const ScalarField& f) {
  const Grid2D& g = f.grid();
  double total = 0.0;
  for (int j = 0; j <= g.Ny(); ++j) {
    double row = 0.0;
    for (int i = 0; i < g.Nx(); ++i) row += f(i, j);
    total += g.weight(j) * row;
  }
  return total;
}

double integrate_product(const ScalarField& f, const ScalarField& h) {
  require_same_grid(f, h);
  const Grid2D& g = f.grid();
  double total = 0.0;
  for (int j = 0; j <= g.Ny(); ++j) {
    double row = 0.0;
    for (int i = 0; i < g.Nx(); ++i) row += f(i, j) * h(i, j);
    total += g.weight(j) * row;
  }
  return total;
}

double l2_norm(const ScalarField& f) { return std::sqrt(integrate_product(f, f)); }

double relative_l2(const ScalarField& f, const ScalarField& ref) {
  return l2_norm(f - ref) / l2_norm(ref);
}

double inner_mass_fraction(const ScalarField& f, double frac) {
  const Grid2D& g = f.grid();
  double inner = 0.0, total = 0.0;
  for (int j = 0; j <= g.Ny(); ++j)
    for (int i = 0; i < g.Nx(); ++i) {
      const double m = g.weight(j) * std::fabs(f(i, j));
      total += m;
      if (std::fabs(g.x1(i)) <= frac * g.Lx() && g.x2(j) <= frac * g.Ly()) inner += m;
    }
  return total > 0.0 ? inner / total : 1.0;
}

}  // namespace lamb
