#include <doctest.h>

#include "gmfineq/error.hpp"
#include "gmfineq/gmf.hpp"
#include "gmfineq/matrixlab.hpp"
#include "helpers.hpp"

using namespace gmfineq;

namespace {

// Complex 3x3 with no special structure.
Matrix fixed_matrix() {
  return Matrix::from_rows({{{1, 2}, {-0.5, 0.25}, {3, -1}},
                            {{0, 0.75}, {2, -1.5}, {-1, 0.5}},
                            {{0.5, -0.5}, 1.25, {-2, 1}}});
}

void check_close(Complex got, Complex want, double tol = 1e-13) {
  CHECK(std::abs(got - want) <= tol * (1 + std::abs(want)));
}

}  // namespace

TEST_CASE("fixed values from brute-force enumeration") {
  const Matrix m = fixed_matrix();
  check_close(gmf(GmfSpec::per(3), m).raw, {-14.375, -4.4375});
  check_close(gmf(GmfSpec::det(3), m).raw, {-8.875, 9.1875});
  check_close(gmf_naive(GmfSpec::per(3), m).raw, {-14.375, -4.4375});
  check_close(gmf_naive(GmfSpec::det(3), m).raw, {-8.875, 9.1875});
  const auto c3 = cyclic_group(3);
  check_close(gmf(GmfSpec::custom(trivial_character(c3)), m).raw, {-11.625, 2.375});
  check_close(gmf(GmfSpec::custom(cyclic_character(c3, 1)), m).raw, {-10.122917437700576, -2.0535254037844393});
}

TEST_CASE("small closed forms") {
  CHECK(gmf(GmfSpec::per(2), Matrix::constant(2, 1.0)).value == 2.0);
  CHECK(gmf(GmfSpec::det(3), Matrix::identity(3)).value == 1.0);
  CHECK(gmf(GmfSpec::custom(trivial_character(cyclic_group(3))), Matrix::identity(3)).value == 1.0);
  CHECK(gmf(GmfSpec::det(2), Matrix::constant(2, 1.0)).value == 0.0);
  // per of the all-ones n x n matrix is n!.
  CHECK(gmf(GmfSpec::per(6), Matrix::constant(6, 1.0)).value == doctest::Approx(720.0).epsilon(1e-14));
  CHECK(gmf(GmfSpec::per(1), Matrix::diagonal({3.5})).value == 3.5);
}

TEST_CASE("engines agree on random complex matrices") {
  SplitMix64 rng(77);
  for (std::size_t n = 2; n <= 7; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const Matrix a = testing::random_complex(n, rng);
      const double scale = gmf_scale(a, n);
      const auto naive_per = gmf_naive(GmfSpec::per(n), a).raw;
      const auto naive_det = gmf_naive(GmfSpec::det(n), a).raw;
      CHECK(testing::rel_err(permanent_ryser(a).raw, naive_per, scale) < 1e-12);
      CHECK(testing::rel_err(determinant(a).raw, naive_det, scale) < 1e-12);
    }
  }
}

TEST_CASE("tensor oracle agrees with enumeration") {
  SplitMix64 rng(5);
  for (int n = 2; n <= 4; ++n) {
    const auto cyc = cyclic_group(n);
    std::vector<GmfSpec> specs = {GmfSpec::det(n), GmfSpec::per(n), GmfSpec::custom(trivial_character(cyc)),
                                  GmfSpec::custom(cyclic_character(cyc, 1))};
    for (int trial = 0; trial < 5; ++trial) {
      const Matrix b = testing::random_complex(n, rng);
      const Matrix a = b.adjoint() * b;
      for (const auto& spec : specs) {
        const auto want = gmf_naive(spec, a).raw;
        CHECK(testing::rel_err(gmf_tensor_oracle(spec, a).raw, want, gmf_scale(a, n)) < 1e-12);
      }
    }
  }
}

TEST_CASE("tensor oracle uses chi itself, not its conjugate") {
  // On Hermitian input the two characters give different real values;
  // only chi reproduces the enumeration.
  const Matrix h = random_psd_one(3, 99, 1.0, Field::Complex).matrix();
  const auto c3 = cyclic_group(3);
  const GmfSpec chi = GmfSpec::custom(cyclic_character(c3, 1));
  const GmfSpec chi_bar = GmfSpec::custom(cyclic_character(c3, 2));
  CHECK(gmf(chi, h).value == doctest::Approx(0.4691434028814024).epsilon(1e-13));
  CHECK(gmf(chi_bar, h).value == doctest::Approx(0.43773511120923503).epsilon(1e-13));
  CHECK(gmf_tensor_oracle(chi, h).value == doctest::Approx(0.4691434028814024).epsilon(1e-13));
  CHECK(gmf_tensor_oracle(chi_bar, h).value == doctest::Approx(0.43773511120923503).epsilon(1e-13));
}

TEST_CASE("values on PSD input are real") {
  SplitMix64 rng(8);
  for (int n = 2; n <= 5; ++n) {
    const Matrix b = testing::random_complex(n, rng);
    const Matrix a = b.adjoint() * b;
    const auto spec = GmfSpec::custom(cyclic_character(cyclic_group(n), 1));
    const auto v = gmf_checked(spec, a);
    CHECK(v.imag_residue <= 1e-9 * gmf_scale(a, n));
    CHECK(v.value >= -1e-9 * gmf_scale(a, n));
  }
}

TEST_CASE("product specs") {
  const GmfSpec prod = GmfSpec::product({GmfSpec::det(1), GmfSpec::per(2)});
  CHECK(prod.degree() == 3);
  CHECK(prod.id() == "det*per");
  CHECK(prod.block_degrees() == std::vector<std::size_t>{1, 2});
  const Matrix blocks[] = {Matrix::diagonal({3.0}), Matrix::constant(2, 1.0)};
  CHECK(product_gmf(prod, blocks).value == 6.0);
  // Off-diagonal blocks do not enter.
  Matrix full = block_diag(blocks);
  full(0, 2) = 7.0;
  full(2, 0) = 7.0;
  CHECK(gmf(prod, full).value == 6.0);
  const Matrix one_block[] = {Matrix::diagonal({3.0})};
  CHECK_THROWS_AS(product_gmf(prod, one_block), Error);
}

TEST_CASE("gmf errors") {
  try {
    gmf(GmfSpec::det(3), Matrix::identity(2));
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
  CHECK_THROWS_AS(gmf_naive(GmfSpec::per(9), Matrix::identity(9)), Error);
  CHECK_THROWS_AS(gmf_tensor_oracle(GmfSpec::per(7), Matrix::identity(7)), Error);
  CHECK_THROWS_AS(GmfSpec::det(0), Error);
  // A complex immanant of a non-Hermitian matrix is genuinely complex.
  const GmfSpec chi = GmfSpec::custom(cyclic_character(cyclic_group(3), 1));
  try {
    gmf_checked(chi, fixed_matrix());
    FAIL("expected ResidueBreach");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ResidueBreach);
  }
}
