#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lamb {

struct Point {
  double x1 = 0.0;
  double x2 = 0.0;
};

struct Vec2 {
  double v1 = 0.0;
  double v2 = 0.0;
};

// Truncated half-plane [-Lx, Lx) x [0, Ly]; periodic in x1, Dirichlet rows
// at j = 0 and j = Ny.
class Grid2D {
 public:
  Grid2D(double Lx, double Ly, int Nx, int Ny);

  double Lx() const { return Lx_; }
  double Ly() const { return Ly_; }
  int Nx() const { return Nx_; }
  int Ny() const { return Ny_; }
  double dx() const { return dx_; }
  double dy() const { return dy_; }

  double x1(int i) const { return -Lx_ + i * dx_; }
  double x2(int j) const { return j * dy_; }
  std::size_t size() const { return static_cast<std::size_t>(Nx_) * (Ny_ + 1); }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * Nx_ + i;
  }

  // Quadrature weight of a node in row j (half weight on rows 0 and Ny).
  double weight(int j) const;

  // k1 for the real-FFT index m = 0..Nx/2, k2 for sine index q = 0..Ny.
  double k1(int m) const;
  double k2(int q) const;

  bool operator==(const Grid2D&) const = default;

 private:
  double Lx_, Ly_;
  int Nx_, Ny_;
  double dx_, dy_;
};

// Samples on a Grid2D, row-major with x2 outer and x1 inner.
class ScalarField {
 public:
  explicit ScalarField(const Grid2D& grid);
  ScalarField(const Grid2D& grid, std::vector<double> values);

  template <class F>
  static ScalarField sample(const Grid2D& grid, F&& f) {
    ScalarField out(grid);
    for (int j = 0; j <= grid.Ny(); ++j)
      for (int i = 0; i < grid.Nx(); ++i)
        out(i, j) = f(Point{grid.x1(i), grid.x2(j)});
    return out;
  }

  const Grid2D& grid() const { return grid_; }
  double& operator()(int i, int j) { return values_[grid_.index(i, j)]; }
  double operator()(int i, int j) const { return values_[grid_.index(i, j)]; }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  bool all_finite() const;
  double max() const;
  double min() const;
  double max_abs() const;
  // Largest |value| on rows 0 and Ny.
  double boundary_max_abs() const;

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double s);

 private:
  Grid2D grid_;
  std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);

void require_same_grid(const ScalarField& a, const ScalarField& b);

// Box quadrature of f, of f*g, and of g(x) f(x) for a weight g(x1, x2).
double integrate(const ScalarField& f);
double integrate_product(const ScalarField& f, const ScalarField& g);
double l2_norm(const ScalarField& f);
double relative_l2(const ScalarField& f, const ScalarField& ref);

// Fraction of the total |f| mass lying in |x1| <= frac*Lx, x2 <= frac*Ly.
double inner_mass_fraction(const ScalarField& f, double frac = 0.8);

}  // namespace lamb
