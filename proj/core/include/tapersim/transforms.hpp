#ifndef TAPERSIM_TRANSFORMS_HPP
#define TAPERSIM_TRANSFORMS_HPP

#include <complex>
#include <memory>
#include <vector>

namespace tapersim {

/// In-place 2D complex DFT pair on an nx-by-ny row-major buffer.
/// Plans are created with FFTW_ESTIMATE so results are reproducible
/// run to run; plan creation is serialized internally (FFTW planning
/// is not thread-safe), execution on distinct instances is.
class Fft2D {
public:
  Fft2D(int nx, int ny);
  ~Fft2D();
  Fft2D(const Fft2D&) = delete;
  Fft2D& operator=(const Fft2D&) = delete;

  int nx() const { return nx_; }
  int ny() const { return ny_; }

  std::complex<double>* data() { return buffer_; }
  const std::complex<double>* data() const { return buffer_; }

  void forward();  // unscaled
  void backward(); // unscaled; forward+backward multiplies by nx*ny

private:
  int nx_, ny_;
  std::complex<double>* buffer_;
  void* plan_fwd_;
  void* plan_bwd_;
};

/// In-place 2D DST-I on an nx-by-ny row-major real buffer. These are
/// the eigenvectors of the 5-point Laplacian with zero-Dirichlet ghost
/// boundaries, which makes constant-coefficient Helmholtz shifts
/// exactly invertible in this basis.
class Dst2D {
public:
  Dst2D(int nx, int ny);
  ~Dst2D();
  Dst2D(const Dst2D&) = delete;
  Dst2D& operator=(const Dst2D&) = delete;

  double* data() { return buffer_; }
  const double* data() const { return buffer_; }

  /// Applies the (self-inverse up to scaling) transform; two
  /// applications multiply the data by 4*(nx+1)*(ny+1).
  void apply();

  /// Eigenvalue of the 1D second-difference operator (u_{i-1} - 2u_i +
  /// u_{i+1})/h^2 for DST-I mode k (0-based) on n interior points.
  static double laplacian_eigenvalue(int k, int n, double h);

private:
  int nx_, ny_;
  double* buffer_;
  void* plan_;
};

} // namespace tapersim

#endif
