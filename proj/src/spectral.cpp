#include "lamb/spectral.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>

#include "lamb/errors.hpp"

namespace lamb {
namespace {

// The FFTW planner is not thread-safe; plan execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct RealBuffer {
  explicit RealBuffer(std::size_t n) : p(fftw_alloc_real(n)), n(n) {}
  ~RealBuffer() { fftw_free(p); }
  RealBuffer(const RealBuffer&) = delete;
  RealBuffer& operator=(const RealBuffer&) = delete;
  double* p;
  std::size_t n;
};

struct ComplexBuffer {
  explicit ComplexBuffer(std::size_t n) : p(fftw_alloc_complex(n)), n(n) {}
  ~ComplexBuffer() { fftw_free(p); }
  ComplexBuffer(const ComplexBuffer&) = delete;
  ComplexBuffer& operator=(const ComplexBuffer&) = delete;
  double* real() { return reinterpret_cast<double*>(p); }
  fftw_complex* p;
  std::size_t n;
};

}  // namespace

struct SineFourier::Plans {
  fftw_plan r2c_inner = nullptr;
  fftw_plan c2r_inner = nullptr;
  fftw_plan c2r_full = nullptr;
  fftw_plan dst_cols = nullptr;
  fftw_plan dct_cols = nullptr;

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    for (fftw_plan p : {r2c_inner, c2r_inner, c2r_full, dst_cols, dct_cols})
      if (p) fftw_destroy_plan(p);
  }
};

SineFourier::SineFourier(const Grid2D& grid) : grid_(grid), plans_(std::make_unique<Plans>()) {
  const int nx = grid.Nx();
  const int rows_inner = grid.Ny() - 1;
  const int rows_full = grid.Ny() + 1;
  const int nc = cols();

  RealBuffer rin(static_cast<std::size_t>(rows_full) * nx);
  ComplexBuffer cin(static_cast<std::size_t>(rows_full) * nc);

  std::lock_guard lock(planner_mutex());
  const unsigned flags = FFTW_ESTIMATE;
  int n[1] = {nx};
  plans_->r2c_inner = fftw_plan_many_dft_r2c(1, n, rows_inner, rin.p, nullptr, 1, nx, cin.p,
                                             nullptr, 1, nc, flags);
  plans_->c2r_inner = fftw_plan_many_dft_c2r(1, n, rows_inner, cin.p, nullptr, 1, nc, rin.p,
                                             nullptr, 1, nx, flags);
  plans_->c2r_full = fftw_plan_many_dft_c2r(1, n, rows_full, cin.p, nullptr, 1, nc, rin.p,
                                            nullptr, 1, nx, flags);
  int ns[1] = {rows_inner};
  fftw_r2r_kind dst[1] = {FFTW_RODFT00};
  plans_->dst_cols = fftw_plan_many_r2r(1, ns, 2 * nc, cin.real(), nullptr, 2 * nc, 1,
                                        cin.real(), nullptr, 2 * nc, 1, dst, flags);
  int nd[1] = {rows_full};
  fftw_r2r_kind dct[1] = {FFTW_REDFT00};
  plans_->dct_cols = fftw_plan_many_r2r(1, nd, 2 * nc, cin.real(), nullptr, 2 * nc, 1,
                                        cin.real(), nullptr, 2 * nc, 1, dct, flags);
  if (!plans_->r2c_inner || !plans_->c2r_inner || !plans_->c2r_full || !plans_->dst_cols ||
      !plans_->dct_cols)
    throw std::runtime_error("SineFourier: FFTW planning failed");
}

SineFourier::~SineFourier() = default;

Spectrum SineFourier::forward(const ScalarField& f) const {
  if (!(f.grid() == grid_)) throw ShapeError("SineFourier::forward: grid mismatch");
  const int nx = grid_.Nx();
  const int nr = rows();
  const int nc = cols();
  RealBuffer rin(static_cast<std::size_t>(nr) * nx);
  std::memcpy(rin.p, f.values().data() + nx, sizeof(double) * nr * nx);
  ComplexBuffer c(static_cast<std::size_t>(nr) * nc);
  fftw_execute_dft_r2c(plans_->r2c_inner, rin.p, c.p);
  fftw_execute_r2r(plans_->dst_cols, c.real(), c.real());
  Spectrum out(nr, nc);
  std::memcpy(static_cast<void*>(out.data.data()), c.p, sizeof(fftw_complex) * nr * nc);
  return out;
}

ScalarField SineFourier::sine_eval(const Spectrum& s) const {
  const int nx = grid_.Nx();
  const int nr = rows();
  const int nc = cols();
  if (s.rows != nr || s.cols != nc) throw ShapeError("SineFourier::sine_eval: spectrum shape");
  ComplexBuffer c(static_cast<std::size_t>(nr) * nc);
  std::memcpy(c.p, s.data.data(), sizeof(fftw_complex) * nr * nc);
  fftw_execute_r2r(plans_->dst_cols, c.real(), c.real());
  RealBuffer rout(static_cast<std::size_t>(nr) * nx);
  fftw_execute_dft_c2r(plans_->c2r_inner, c.p, rout.p);
  ScalarField out(grid_);
  const double scale = 1.0 / (2.0 * grid_.Ny() * nx);
  double* dst = out.values().data() + nx;
  for (std::size_t k = 0; k < rout.n; ++k) dst[k] = scale * rout.p[k];
  return out;
}

ScalarField SineFourier::cosine_eval(const Spectrum& s) const {
  const int nx = grid_.Nx();
  const int nr = rows();
  const int nc = cols();
  if (s.rows != nr || s.cols != nc) throw ShapeError("SineFourier::cosine_eval: spectrum shape");
  const std::size_t full = static_cast<std::size_t>(nr + 2) * nc;
  ComplexBuffer c(full);
  std::memset(c.p, 0, sizeof(fftw_complex) * full);
  std::memcpy(c.p + nc, s.data.data(), sizeof(fftw_complex) * nr * nc);
  fftw_execute_r2r(plans_->dct_cols, c.real(), c.real());
  ScalarField out(grid_);
  RealBuffer rout(grid_.size());
  fftw_execute_dft_c2r(plans_->c2r_full, c.p, rout.p);
  const double scale = 1.0 / (2.0 * grid_.Ny() * nx);
  double* dst = out.values().data();
  for (std::size_t k = 0; k < rout.n; ++k) dst[k] = scale * rout.p[k];
  return out;
}

}  // namespace lamb
