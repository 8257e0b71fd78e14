#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gmfineq/matrix.hpp"
#include "gmfineq/permutation.hpp"

namespace gmfineq {

inline constexpr std::size_t kNaiveDegreeCap = 8;
inline constexpr std::size_t kRyserDegreeCap = 24;
inline constexpr std::size_t kDeterminantDegreeCap = 64;
inline constexpr std::size_t kTensorOracleDegreeCap = 6;
/// Imaginary parts above this multiple of the value scale are a breach.
inline constexpr double kImagTolerance = 1e-9;

enum class GmfKind { Det, Per, Custom, Product };

/// Which generalized matrix function to evaluate:
///   Det      sum over S_n of sign(s) prod a_{i s(i)}
///   Per      sum over S_n of prod a_{i s(i)}
///   Custom   sum over G of chi(s) prod a_{i s(i)} for a linear character chi of G
///   Product  d_1(X_1) ... d_k(X_k) over the diagonal blocks of the input
class GmfSpec {
 public:
  static GmfSpec det(std::size_t n);
  static GmfSpec per(std::size_t n);
  static GmfSpec custom(LinearCharacter character, std::string name = "custom");
  /// Throws InvalidArgument for an empty factor list.
  static GmfSpec product(std::vector<GmfSpec> factors);

  GmfKind kind() const noexcept { return kind_; }
  /// Matrix size the spec acts on; for products, the sum of block degrees.
  std::size_t degree() const noexcept { return degree_; }
  std::vector<std::size_t> block_degrees() const;
  const std::vector<GmfSpec>& factors() const noexcept { return factors_; }
  /// Custom specs only.
  const LinearCharacter& character() const;
  const std::string& id() const noexcept { return id_; }

 private:
  GmfSpec(GmfKind kind, std::size_t degree, std::string id)
      : kind_(kind), degree_(degree), id_(std::move(id)) {}

  GmfKind kind_;
  std::size_t degree_;
  std::string id_;
  std::optional<LinearCharacter> character_;
  std::vector<GmfSpec> factors_;
};

/// Real part of a complex GMF evaluation plus what was discarded.
struct GmfValue {
  double value = 0.0;
  double imag_residue = 0.0;
  Complex raw{0.0, 0.0};

  static GmfValue from_complex(Complex z) { return {z.real(), std::abs(z.imag()), z}; }
};

/// Upper bound on |term| for a degree-n GMF of `a`: max|a_ij|^n. For PSD
/// input this is (max diagonal)^n.
double gmf_scale(const Matrix& a, std::size_t degree);

/// Direct enumeration over the group. Det/Per/Custom only; n <= 8.
/// Throws DimensionMismatch, DegreeTooLarge.
GmfValue gmf_naive(const GmfSpec& spec, const Matrix& a);

/// Ryser inclusion-exclusion with Gray-code column toggling, O(2^n n).
GmfValue permanent_ryser(const Matrix& a);

/// LU with partial pivoting; singular input gives 0.
GmfValue determinant(const Matrix& a);

/// Dispatch: Det -> determinant, Per -> permanent_ryser, Custom -> gmf_naive,
/// Product -> product_gmf over the diagonal blocks of `a`.
GmfValue gmf(const GmfSpec& spec, const Matrix& a);

/// prod_i gmf(factor_i, blocks[i]). Throws BlockCountMismatch,
/// DimensionMismatch.
GmfValue product_gmf(const GmfSpec& spec, std::span<const Matrix> blocks);

/// gmf() that additionally throws ResidueBreach when the imaginary residue
/// exceeds 1e-9 * gmf_scale. Use for inputs that should give real values.
GmfValue gmf_checked(const GmfSpec& spec, const Matrix& a);

/// <v, (A tensor ... tensor A) v> with
///   v = |G|^{-1/2} sum_s chi(s) e_{s(1)} tensor ... tensor e_{s(n)},
/// evaluated in the n^n-dimensional tensor space by n mode products.
/// Independent of the enumeration engines. Det/Per/Custom; n <= 6.
GmfValue gmf_tensor_oracle(const GmfSpec& spec, const Matrix& a);

}  // namespace gmfineq
