#include "gmfineq/matrixlab.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gmfineq/error.hpp"
#include "gmfineq/random.hpp"

namespace gmfineq {

namespace {

double hermitian_defect(const Matrix& a) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - std::conj(a(j, i))));
  }
  return d;
}

Matrix hermitian_part(const Matrix& a) {
  Matrix h(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    h(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < a.cols(); ++j) {
      const Complex v = 0.5 * (a(i, j) + std::conj(a(j, i)));
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  }
  return h;
}

double off_diagonal_norm2(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) s += std::norm(a(i, j));
    }
  }
  return s;
}

// One two-sided rotation zeroing a(p, q). The unitary acting on the (p, q)
// coordinates is diag(1, e^{-i phi}) * [[c, s], [-s, c]], phi = arg a(p, q).
void jacobi_rotate(Matrix& a, Matrix& u, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const Complex phase = apq / mag;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const Complex s_conj_phase = s * std::conj(phase);
  const Complex c_conj_phase = c * std::conj(phase);

  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = c * akp - s_conj_phase * akq;
    a(k, q) = s * akp + c_conj_phase * akq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk - s * phase * aqk;
    a(q, k) = s * apk + c * phase * aqk;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex ukp = u(k, p);
    const Complex ukq = u(k, q);
    u(k, p) = c * ukp - s_conj_phase * ukq;
    u(k, q) = s * ukp + c_conj_phase * ukq;
  }
  a(p, p) = app - t * mag;
  a(q, q) = aqq + t * mag;
  a(p, q) = 0.0;
  a(q, p) = 0.0;
}

}  // namespace

Matrix SpectralDecomposition::reconstruct() const {
  return reconstruct([](double x) { return x; });
}

SpectralDecomposition hermitian_eig(const Matrix& input) {
  if (!input.is_square()) throw Error(ErrorCode::DimensionMismatch, "eigendecomposition needs a square matrix");
  const std::size_t n = input.rows();
  if (n > kMaxEigenDimension) {
    throw Error(ErrorCode::DegreeTooLarge, "eigendecomposition limited to n <= 64");
  }
  if (hermitian_defect(input) > kPsdTolerance * (1.0 + input.max_abs())) {
    throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian within tolerance");
  }

  Matrix a = hermitian_part(input);
  Matrix u = Matrix::identity(n);

  double total = 0.0;
  for (const auto& v : a.data()) total += std::norm(v);
  // Off-diagonal mass at the level of accumulated roundoff counts as zero.
  const double resolution = 4e-16 * static_cast<double>(n);
  const double target = resolution * resolution * total;

  bool converged = off_diagonal_norm2(a) <= target;
  for (int sweep = 0; sweep < kJacobiSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(a, u, p, q);
    }
    converged = off_diagonal_norm2(a) <= target;
  }
  if (!converged) {
    throw Error(ErrorCode::NoConvergence, "Jacobi iteration exceeded 30 sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

  SpectralDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = u(i, order[k]);
  }
  return out;
}

bool is_psd(const Matrix& a, double tol) {
  if (!a.is_square()) return false;
  const double scale = 1.0 + a.max_abs();
  if (hermitian_defect(a) > tol * scale) return false;
  if (a.rows() == 0) return true;
  const auto eig = hermitian_eig(hermitian_part(a));
  return eig.eigenvalues.front() >= -tol * scale;
}

PsdMatrix PsdMatrix::certify(const Matrix& a, double tol) {
  if (!a.is_square()) throw Error(ErrorCode::DimensionMismatch, "PSD matrix must be square");
  if (hermitian_defect(a) > 1e-12 * a.max_abs()) {
    throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian");
  }
  if (!is_psd(a, tol)) throw Error(ErrorCode::NotPsd, "matrix has a negative eigenvalue");
  return PsdMatrix(hermitian_part(a));
}

PsdMatrix trusted_psd(Matrix m) { return PsdMatrix(hermitian_part(m)); }

PsdMatrix& PsdMatrix::operator+=(const PsdMatrix& other) {
  m_ += other.m_;
  return *this;
}

PsdMatrix PsdMatrix::scaled(double c) const {
  if (!(c >= 0.0)) throw Error(ErrorCode::InvalidArgument, "PSD cone is closed only under c >= 0");
  return PsdMatrix(m_ * Complex(c, 0.0));
}

PsdMatrix psd_sum(std::span<const PsdMatrix> parts) {
  if (parts.empty()) throw Error(ErrorCode::InvalidArgument, "empty PSD sum");
  PsdMatrix total = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) total += parts[i];
  return total;
}

PsdMatrix random_psd_one(std::size_t n, std::uint64_t stream_seed, double scale, Field field) {
  SplitMix64 rng(stream_seed);
  Matrix b(n, n);
  if (field == Field::Real) {
    const double amp = std::sqrt(scale);
    for (auto& v : b.data()) v = Complex(amp * rng.uniform(-1.0, 1.0), 0.0);
  } else {
    const double amp = std::sqrt(scale / 2.0);
    for (auto& v : b.data()) {
      const double re = rng.uniform(-1.0, 1.0);
      const double im = rng.uniform(-1.0, 1.0);
      v = Complex(amp * re, amp * im);
    }
  }
  return trusted_psd(b.adjoint() * b);
}

std::vector<PsdMatrix> random_psd(const RandomInstanceConfig& config) {
  if (config.n < 1 || config.m < 1 || !(config.scale > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "random instance needs n >= 1, m >= 1, scale > 0");
  }
  std::vector<PsdMatrix> out;
  out.reserve(config.m);
  for (std::size_t i = 0; i < config.m; ++i) {
    out.push_back(random_psd_one(config.n, substream_seed(config.seed, i), config.scale, config.field));
  }
  return out;
}

PsdMatrix matrix_root(const PsdMatrix& a, int p) {
  if (p < 1) throw Error(ErrorCode::InvalidArgument, "root order must be >= 1");
  if (p == 1) return a;
  const auto eig = hermitian_eig(a.matrix());
  const double inv = 1.0 / p;
  return trusted_psd(eig.reconstruct([inv](double x) { return x > 0.0 ? std::pow(x, inv) : 0.0; }));
}

Matrix matrix_power(const Matrix& a, int p) {
  if (p < 1) throw Error(ErrorCode::InvalidArgument, "power must be >= 1");
  Matrix out = a;
  for (int i = 1; i < p; ++i) out = out * a;
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  if (rows > kMaxKronDimension || cols > kMaxKronDimension) {
    throw Error(ErrorCode::ResultTooLarge, "Kronecker product dimension exceeds 4096");
  }
  Matrix out(rows, cols);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == 0.0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
      }
    }
  }
  return out;
}

Matrix kron_power(const Matrix& a, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "Kronecker power must be >= 1");
  Matrix out = a;
  for (int i = 1; i < k; ++i) out = kron(out, a);
  return out;
}

LoewnerComparison loewner_geq(const Matrix& x, const Matrix& y, double tol) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "Loewner comparison needs equal shapes");
  }
  const Matrix diff = x - y;
  const auto eig = hermitian_eig(diff);
  LoewnerComparison out;
  out.min_eigenvalue = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.front();
  out.holds = out.min_eigenvalue >= -tol * (1.0 + diff.max_abs());
  return out;
}

}  // namespace gmfineq
