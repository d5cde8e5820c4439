#include "tapersim/transforms.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

namespace tapersim {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
} // namespace

Fft2D::Fft2D(int nx, int ny) : nx_(nx), ny_(ny) {
  buffer_ = reinterpret_cast<std::complex<double>*>(
      fftw_alloc_complex(static_cast<std::size_t>(nx) * ny));
  auto* b = reinterpret_cast<fftw_complex*>(buffer_);
  std::lock_guard<std::mutex> lock(planner_mutex());
  // fftw uses row-major (n0 = rows = ny, n1 = cols = nx)
  plan_fwd_ = fftw_plan_dft_2d(ny_, nx_, b, b, FFTW_FORWARD, FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft_2d(ny_, nx_, b, b, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft2D::~Fft2D() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
  fftw_free(reinterpret_cast<fftw_complex*>(buffer_));
}

void Fft2D::forward() { fftw_execute(static_cast<fftw_plan>(plan_fwd_)); }
void Fft2D::backward() { fftw_execute(static_cast<fftw_plan>(plan_bwd_)); }

Dst2D::Dst2D(int nx, int ny) : nx_(nx), ny_(ny) {
  buffer_ = fftw_alloc_real(static_cast<std::size_t>(nx) * ny);
  std::lock_guard<std::mutex> lock(planner_mutex());
  plan_ = fftw_plan_r2r_2d(ny_, nx_, buffer_, buffer_, FFTW_RODFT00,
                           FFTW_RODFT00, FFTW_ESTIMATE);
}

Dst2D::~Dst2D() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  fftw_free(buffer_);
}

void Dst2D::apply() { fftw_execute(static_cast<fftw_plan>(plan_)); }

double Dst2D::laplacian_eigenvalue(int k, int n, double h) {
  const double s = std::sin((k + 1) * M_PI / (2.0 * (n + 1)));
  return -4.0 * s * s / (h * h);
}

} // namespace tapersim
