#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gmfineq/matrix.hpp"

namespace gmfineq {

inline constexpr std::size_t kMaxEigenDimension = 64;
inline constexpr std::size_t kMaxKronDimension = 4096;
inline constexpr int kJacobiSweeps = 30;
inline constexpr double kPsdTolerance = 1e-10;

/// Eigenvalues ascending; eigenvectors are the matching unitary columns.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;

  /// U diag(f(lambda)) U*.
  template <class F>
  Matrix reconstruct(F&& f) const;
  Matrix reconstruct() const;
};

/// Cyclic complex Jacobi. Throws NotHermitian when ||A - A*||_max exceeds
/// 1e-10 (1 + ||A||_max), DegreeTooLarge above 64, NoConvergence after 30
/// sweeps.
SpectralDecomposition hermitian_eig(const Matrix& a);

/// True iff `a` is Hermitian within tol (1 + ||A||_max) and its least
/// eigenvalue is >= -tol (1 + ||A||_max).
bool is_psd(const Matrix& a, double tol = kPsdTolerance);

/// Hermitian positive semidefinite matrix. Construction certifies the
/// property; sums and nonnegative multiples stay in the cone without
/// re-certification.
class PsdMatrix {
 public:
  /// Throws NotHermitian or NotPsd. The stored entries are the exact
  /// Hermitian part (A + A*) / 2.
  static PsdMatrix certify(const Matrix& a, double tol = kPsdTolerance);

  std::size_t size() const noexcept { return m_.rows(); }
  const Matrix& matrix() const noexcept { return m_; }
  operator const Matrix&() const noexcept { return m_; }  // NOLINT(google-explicit-constructor)

  PsdMatrix& operator+=(const PsdMatrix& other);
  friend PsdMatrix operator+(PsdMatrix a, const PsdMatrix& b) { return a += b; }
  /// Throws InvalidArgument for c < 0.
  PsdMatrix scaled(double c) const;

 private:
  explicit PsdMatrix(Matrix m) : m_(std::move(m)) {}
  friend PsdMatrix trusted_psd(Matrix m);

  Matrix m_;
};

/// Wraps a matrix already known to be PSD by construction (Gram products,
/// spectral functions with nonnegative values). Hermitian part is taken.
PsdMatrix trusted_psd(Matrix m);

/// Sum of a nonempty list.
PsdMatrix psd_sum(std::span<const PsdMatrix> parts);

enum class Field { Real, Complex };

struct RandomInstanceConfig {
  std::size_t n = 2;
  std::size_t m = 3;
  std::uint64_t seed = 0;
  double scale = 1.0;
  Field field = Field::Real;
};

/// m matrices B*B, B n-by-n with entries uniform so that |b_ij|^2 <= scale
/// (real: sqrt(scale) U[-1,1); complex: both parts sqrt(scale/2) U[-1,1)).
/// Matrix i draws from substream_seed(seed, i). Throws InvalidArgument on a
/// bad config.
std::vector<PsdMatrix> random_psd(const RandomInstanceConfig& config);
/// Single Gram matrix from an explicit stream seed.
PsdMatrix random_psd_one(std::size_t n, std::uint64_t stream_seed, double scale, Field field);

/// U diag(max(lambda, 0)^(1/p)) U*.
PsdMatrix matrix_root(const PsdMatrix& a, int p);
/// Repeated multiplication, p >= 1.
Matrix matrix_power(const Matrix& a, int p);

/// Throws ResultTooLarge when either result dimension exceeds 4096.
Matrix kron(const Matrix& a, const Matrix& b);
/// A tensor A tensor ... (k factors), k >= 1.
Matrix kron_power(const Matrix& a, int k);

struct LoewnerComparison {
  bool holds = false;
  double min_eigenvalue = 0.0;
};

/// X >= Y in the Loewner order iff lambda_min(X - Y) >= -tol (1 + ||X - Y||_max).
LoewnerComparison loewner_geq(const Matrix& x, const Matrix& y, double tol = kPsdTolerance);

template <class F>
Matrix SpectralDecomposition::reconstruct(F&& f) const {
  const std::size_t n = eigenvalues.size();
  Matrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double w = f(eigenvalues[k]);
    if (w == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex uik = eigenvectors(i, k) * w;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += uik * std::conj(eigenvectors(j, k));
    }
  }
  return out;
}

}  // namespace gmfineq
