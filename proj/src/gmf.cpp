#include "gmfineq/gmf.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "gmfineq/error.hpp"

namespace gmfineq {

using LongComplex = std::complex<long double>;

namespace {

void require_square(const Matrix& a, std::size_t n) {
  if (!a.is_square() || a.rows() != n) {
    throw Error(ErrorCode::DimensionMismatch, "matrix size " + std::to_string(a.rows()) + "x" +
                                                  std::to_string(a.cols()) + " does not match degree " +
                                                  std::to_string(n));
  }
}

Complex to_complex(LongComplex z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

Complex diagonal_product(const Matrix& a, const std::vector<int>& images) {
  Complex term = 1.0;
  for (std::size_t i = 0; i < images.size(); ++i) term *= a(i, static_cast<std::size_t>(images[i]));
  return term;
}

int parity_sign(const std::vector<int>& images) {
  int inversions = 0;
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t j = i + 1; j < images.size(); ++j) inversions += images[i] > images[j];
  }
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

GmfSpec GmfSpec::det(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "degree must be >= 1");
  return GmfSpec(GmfKind::Det, n, "det");
}

GmfSpec GmfSpec::per(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "degree must be >= 1");
  return GmfSpec(GmfKind::Per, n, "per");
}

GmfSpec GmfSpec::custom(LinearCharacter character, std::string name) {
  const auto n = static_cast<std::size_t>(character.group()->degree());
  GmfSpec spec(GmfKind::Custom, n, std::move(name));
  spec.character_ = std::move(character);
  return spec;
}

GmfSpec GmfSpec::product(std::vector<GmfSpec> factors) {
  if (factors.empty()) throw Error(ErrorCode::InvalidArgument, "product needs at least one factor");
  std::size_t total = 0;
  std::string id;
  for (const auto& f : factors) {
    total += f.degree();
    if (!id.empty()) id += "*";
    id += f.kind() == GmfKind::Product ? "(" + f.id() + ")" : f.id();
  }
  GmfSpec spec(GmfKind::Product, total, std::move(id));
  spec.factors_ = std::move(factors);
  return spec;
}

std::vector<std::size_t> GmfSpec::block_degrees() const {
  if (kind_ != GmfKind::Product) return {degree_};
  std::vector<std::size_t> out;
  for (const auto& f : factors_) out.push_back(f.degree());
  return out;
}

const LinearCharacter& GmfSpec::character() const {
  if (!character_) throw Error(ErrorCode::InvalidArgument, "spec has no custom character");
  return *character_;
}

double gmf_scale(const Matrix& a, std::size_t degree) {
  return std::pow(a.max_abs(), static_cast<double>(degree));
}

GmfValue gmf_naive(const GmfSpec& spec, const Matrix& a) {
  if (spec.kind() == GmfKind::Product) {
    throw Error(ErrorCode::InvalidArgument, "naive engine evaluates single-block specs only");
  }
  const std::size_t n = spec.degree();
  require_square(a, n);
  if (n > kNaiveDegreeCap) throw Error(ErrorCode::DegreeTooLarge, "naive enumeration limited to n <= 8");

  LongComplex sum = 0.0L;
  if (spec.kind() == GmfKind::Custom) {
    const auto& chi = spec.character();
    const auto& elements = chi.group()->elements();
    for (std::size_t g = 0; g < elements.size(); ++g) {
      const Complex term = chi[g] * diagonal_product(a, elements[g].images());
      sum += LongComplex(term.real(), term.imag());
    }
  } else {
    std::vector<int> images(n);
    std::iota(images.begin(), images.end(), 0);
    const bool signed_sum = spec.kind() == GmfKind::Det;
    do {
      Complex term = diagonal_product(a, images);
      if (signed_sum && parity_sign(images) < 0) term = -term;
      sum += LongComplex(term.real(), term.imag());
    } while (std::next_permutation(images.begin(), images.end()));
  }
  return GmfValue::from_complex(to_complex(sum));
}

GmfValue permanent_ryser(const Matrix& a) {
  if (!a.is_square() || a.empty()) throw Error(ErrorCode::DimensionMismatch, "permanent needs a nonempty square matrix");
  const std::size_t n = a.rows();
  if (n > kRyserDegreeCap) throw Error(ErrorCode::DegreeTooLarge, "Ryser permanent limited to n <= 24");

  std::vector<LongComplex> row_sums(n, 0.0L);
  LongComplex total = 0.0L;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  std::uint64_t gray = 0;
  for (std::uint64_t k = 1; k < subsets; ++k) {
    const auto col = static_cast<std::size_t>(std::countr_zero(k));
    gray ^= std::uint64_t{1} << col;
    const bool added = (gray >> col) & 1u;
    for (std::size_t i = 0; i < n; ++i) {
      const LongComplex v(a(i, col).real(), a(i, col).imag());
      row_sums[i] += added ? v : -v;
    }
    LongComplex prod = 1.0L;
    for (std::size_t i = 0; i < n; ++i) prod *= row_sums[i];
    // (-1)^{n - |S|}
    const bool negative = ((n - static_cast<std::size_t>(std::popcount(gray))) & 1u) != 0;
    total += negative ? -prod : prod;
  }
  return GmfValue::from_complex(to_complex(total));
}

GmfValue determinant(const Matrix& a) {
  if (!a.is_square() || a.empty()) throw Error(ErrorCode::DimensionMismatch, "determinant needs a nonempty square matrix");
  const std::size_t n = a.rows();
  if (n > kDeterminantDegreeCap) throw Error(ErrorCode::DegreeTooLarge, "determinant limited to n <= 64");

  std::vector<LongComplex> lu(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) lu[i * n + j] = LongComplex(a(i, j).real(), a(i, j).imag());
  }
  LongComplex det = 1.0L;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    long double best = std::abs(lu[col * n + col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const long double mag = std::abs(lu[r * n + col]);
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (best == 0.0L) return GmfValue{};
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu[col * n + j], lu[pivot * n + j]);
      det = -det;
    }
    const LongComplex p = lu[col * n + col];
    det *= p;
    for (std::size_t r = col + 1; r < n; ++r) {
      const LongComplex factor = lu[r * n + col] / p;
      if (factor == 0.0L) continue;
      for (std::size_t j = col + 1; j < n; ++j) lu[r * n + j] -= factor * lu[col * n + j];
    }
  }
  return GmfValue::from_complex(to_complex(det));
}

GmfValue gmf(const GmfSpec& spec, const Matrix& a) {
  require_square(a, spec.degree());
  switch (spec.kind()) {
    case GmfKind::Det: return determinant(a);
    case GmfKind::Per: return permanent_ryser(a);
    case GmfKind::Custom: return gmf_naive(spec, a);
    case GmfKind::Product: {
      std::vector<Matrix> blocks;
      std::size_t offset = 0;
      for (const auto& f : spec.factors()) {
        blocks.push_back(a.diagonal_block(offset, f.degree()));
        offset += f.degree();
      }
      return product_gmf(spec, blocks);
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown spec kind");
}

GmfValue product_gmf(const GmfSpec& spec, std::span<const Matrix> blocks) {
  if (spec.kind() != GmfKind::Product) throw Error(ErrorCode::InvalidArgument, "product_gmf needs a product spec");
  if (blocks.size() != spec.factors().size()) {
    throw Error(ErrorCode::BlockCountMismatch, "expected " + std::to_string(spec.factors().size()) +
                                                   " blocks, got " + std::to_string(blocks.size()));
  }
  Complex value = 1.0;
  for (std::size_t i = 0; i < blocks.size(); ++i) value *= gmf(spec.factors()[i], blocks[i]).raw;
  return GmfValue::from_complex(value);
}

GmfValue gmf_checked(const GmfSpec& spec, const Matrix& a) {
  const GmfValue v = gmf(spec, a);
  if (v.imag_residue > kImagTolerance * gmf_scale(a, spec.degree())) {
    throw Error(ErrorCode::ResidueBreach, "imaginary residue exceeds 1e-9 * scale for " + spec.id());
  }
  return v;
}

}  // namespace gmfineq
