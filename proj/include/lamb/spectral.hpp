#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "lamb/grid.hpp"

namespace lamb {

// Coefficients of the Fourier (x1) x sine (x2) representation. Row r holds
// sine index q = r + 1 (q = 1..Ny-1); column m is the real-FFT index
// 0..Nx/2. Values are unnormalized FFTW output; the evaluators divide by
// 2*Ny*Nx.
struct Spectrum {
  int rows = 0;
  int cols = 0;
  std::vector<std::complex<double>> data;

  Spectrum() = default;
  Spectrum(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c) {}
  std::complex<double>& operator()(int r, int m) { return data[static_cast<std::size_t>(r) * cols + m]; }
  std::complex<double> operator()(int r, int m) const { return data[static_cast<std::size_t>(r) * cols + m]; }
};

class SineFourier {
 public:
  explicit SineFourier(const Grid2D& grid);
  ~SineFourier();
  SineFourier(const SineFourier&) = delete;
  SineFourier& operator=(const SineFourier&) = delete;

  const Grid2D& grid() const { return grid_; }
  int rows() const { return grid_.Ny() - 1; }
  int cols() const { return grid_.Nx() / 2 + 1; }
  Spectrum empty() const { return Spectrum(rows(), cols()); }

  // Interior rows of f -> coefficients.
  Spectrum forward(const ScalarField& f) const;
  // sum_q c_q sin(q pi x2 / Ly); rows 0 and Ny are exactly zero.
  ScalarField sine_eval(const Spectrum& c) const;
  // sum_q c_q cos(q pi x2 / Ly) over q = 1..Ny-1, on every row.
  ScalarField cosine_eval(const Spectrum& c) const;

  // Row r <-> q = r + 1.
  double k2_row(int r) const { return grid_.k2(r + 1); }
  double k1_col(int m) const { return grid_.k1(m); }
  // k1 with the Nyquist column zeroed, for odd derivatives.
  double k1_deriv(int m) const { return m == grid_.Nx() / 2 ? 0.0 : grid_.k1(m); }

 private:
  struct Plans;
  Grid2D grid_;
  std::unique_ptr<Plans> plans_;
};

}  // namespace lamb
