#include <cmath>

#include "gmfineq/error.hpp"
#include "gmfineq/gmf.hpp"

namespace gmfineq {

namespace {

// Applies `a` along one tensor mode; `stride` is n^(n-1-mode).
void mode_product(const Matrix& a, std::size_t stride, const std::vector<Complex>& in,
                  std::vector<Complex>& out) {
  const std::size_t n = a.rows();
  const std::size_t block = stride * n;
  std::vector<Complex> fiber(n);
  for (std::size_t base = 0; base < in.size(); base += block) {
    for (std::size_t inner = 0; inner < stride; ++inner) {
      for (std::size_t c = 0; c < n; ++c) fiber[c] = in[base + c * stride + inner];
      for (std::size_t r = 0; r < n; ++r) {
        Complex acc = 0.0;
        for (std::size_t c = 0; c < n; ++c) acc += a(r, c) * fiber[c];
        out[base + r * stride + inner] = acc;
      }
    }
  }
}

}  // namespace

GmfValue gmf_tensor_oracle(const GmfSpec& spec, const Matrix& a) {
  if (spec.kind() == GmfKind::Product) {
    throw Error(ErrorCode::InvalidArgument, "tensor oracle evaluates single-block specs only");
  }
  const std::size_t n = spec.degree();
  if (!a.is_square() || a.rows() != n) throw Error(ErrorCode::DimensionMismatch, "matrix size does not match degree");
  if (n > kTensorOracleDegreeCap) throw Error(ErrorCode::DegreeTooLarge, "tensor oracle limited to n <= 6");

  std::optional<LinearCharacter> chi;
  switch (spec.kind()) {
    case GmfKind::Det: chi = sign_character(symmetric_group(static_cast<int>(n))); break;
    case GmfKind::Per: chi = trivial_character(symmetric_group(static_cast<int>(n))); break;
    default: chi = spec.character(); break;
  }
  const auto& elements = chi->group()->elements();

  std::size_t dim = 1;
  for (std::size_t i = 0; i < n; ++i) dim *= n;

  // v = |G|^{-1/2} sum_s chi(s) e_{s(1)} (x) ... (x) e_{s(n)}, first factor most significant.
  std::vector<Complex> v(dim, 0.0);
  const double norm = 1.0 / std::sqrt(static_cast<double>(elements.size()));
  for (std::size_t g = 0; g < elements.size(); ++g) {
    std::size_t idx = 0;
    for (int image : elements[g].images()) idx = idx * n + static_cast<std::size_t>(image);
    v[idx] += (*chi)[g] * norm;
  }

  std::vector<Complex> w = v;
  std::vector<Complex> scratch(dim);
  std::size_t stride = dim;
  for (std::size_t mode = 0; mode < n; ++mode) {
    stride /= n;
    mode_product(a, stride, w, scratch);
    w.swap(scratch);
  }

  Complex q = 0.0;
  for (std::size_t i = 0; i < dim; ++i) q += std::conj(v[i]) * w[i];
  return GmfValue::from_complex(q);
}

}  // namespace gmfineq
