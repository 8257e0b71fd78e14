#include <doctest.h>

#include <algorithm>
#include <complex>
#include <numbers>
#include <set>

#include "gmfineq/error.hpp"
#include "gmfineq/permutation.hpp"

using namespace gmfineq;

namespace {

Permutation three_cycle() {
  const int pts[] = {0, 1, 2};
  return Permutation::cycle(3, pts);
}

std::set<Permutation> element_set(const PermutationGroup& g) {
  return {g.elements().begin(), g.elements().end()};
}

}  // namespace

TEST_CASE("permutations reject non-bijections") {
  CHECK_THROWS_AS(Permutation({0, 0, 1}), Error);
  CHECK_THROWS_AS(Permutation({0, 3, 1}), Error);
  try {
    Permutation({1, 1});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidPermutation);
  }
}

TEST_CASE("composition, inverse and sign") {
  const Permutation c = three_cycle();
  CHECK(c.images() == std::vector<int>{1, 2, 0});
  CHECK((c * c * c).is_identity());
  CHECK((c * c.inverse()).is_identity());
  CHECK(c.sign() == 1);
  const Permutation t = Permutation::transposition(3, 0, 1);
  CHECK(t.sign() == -1);
  // (p * q)(i) = p(q(i))
  const Permutation pq = c * t;
  for (int i = 0; i < 3; ++i) CHECK(pq(i) == c(t(i)));
}

TEST_CASE("closure of small generating sets") {
  SUBCASE("empty set gives the trivial group") {
    const auto g = closure(3, std::vector<Permutation>{});
    CHECK(g.size() == 1);
    CHECK(g.element(0).is_identity());
  }
  SUBCASE("3-cycle and transposition give S_3") {
    const std::vector<Permutation> gens = {three_cycle(), Permutation::transposition(3, 0, 1)};
    CHECK(closure(3, gens).size() == 6);
  }
  SUBCASE("3-cycle alone gives C_3 in power order") {
    const auto g = closure(3, std::vector<Permutation>{three_cycle()});
    REQUIRE(g.size() == 3);
    CHECK(g.element(0).is_identity());
    CHECK(g.element(1) == three_cycle());
    CHECK(g.element(2) == three_cycle() * three_cycle());
  }
  SUBCASE("cap is enforced") {
    const auto s5 = symmetric_group(5);
    std::vector<Permutation> gens;
    for (auto idx : s5->generator_indices()) gens.push_back(s5->element(idx));
    CHECK_THROWS_AS(closure(5, gens, 100), Error);
    CHECK(closure(5, gens).size() == 120);
  }
}

TEST_CASE("groups are closed and idempotent under closure") {
  for (int n = 1; n <= 6; ++n) {
    for (const auto& g : {symmetric_group(n), cyclic_group(n)}) {
      for (std::size_t a = 0; a < g->size(); ++a) {
        for (std::size_t b = 0; b < g->size(); ++b) {
          const auto idx = g->index_of(g->element(a) * g->element(b));
          REQUIRE(idx.has_value());
          CHECK(*idx == g->product_index(a, b));
        }
        CHECK((g->element(a) * g->element(g->inverse_index(a))).is_identity());
      }
      const auto again = closure(n, g->elements());
      CHECK(element_set(again) == element_set(*g));
    }
  }
  CHECK(symmetric_group(7)->size() == 5040);
}

TEST_CASE("from_elements validates its input") {
  const auto c3 = cyclic_group(3);
  CHECK(PermutationGroup::from_elements(3, c3->elements()).size() == 3);
  std::vector<Permutation> missing = {Permutation::identity(3), three_cycle()};
  CHECK_THROWS_AS(PermutationGroup::from_elements(3, missing), Error);
  std::vector<Permutation> dup = {Permutation::identity(3), Permutation::identity(3)};
  CHECK_THROWS_AS(PermutationGroup::from_elements(3, dup), Error);
}

TEST_CASE("sign and trivial characters") {
  const auto s2 = symmetric_group(2);
  const auto sign2 = sign_character(s2);
  CHECK(sign2[0] == std::complex<double>(1.0));
  CHECK(sign2[1] == std::complex<double>(-1.0));
  const auto s3 = symmetric_group(3);
  const auto sign3 = sign_character(s3);
  CHECK(sign3[*s3->index_of(three_cycle())] == std::complex<double>(1.0));
  const auto sign_c3 = sign_character(cyclic_group(3));
  for (const auto& z : sign_c3.values()) CHECK(z == std::complex<double>(1.0));
  const auto triv = trivial_character(s3);
  CHECK(triv.values().size() == 6);
  CHECK(std::all_of(triv.values().begin(), triv.values().end(), [](auto z) { return z == 1.0; }));
  CHECK(trivial_character(symmetric_group(1)).values().size() == 1);
}

TEST_CASE("cyclic characters") {
  const auto c3 = cyclic_group(3);
  const auto k0 = cyclic_character(c3, 0);
  for (const auto& z : k0.values()) CHECK(z == std::complex<double>(1.0));

  const auto c2 = cyclic_group(2);
  const auto s = cyclic_character(c2, 1);
  CHECK(s[0] == std::complex<double>(1.0));
  CHECK(s[1] == std::complex<double>(-1.0));

  const auto k1 = cyclic_character(c3, 1);
  const std::complex<double> w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  CHECK(std::abs(k1[1] - w) < 1e-15);
  CHECK(std::abs(k1[2] - w * w) < 1e-15);
  CHECK_FALSE(k1.is_real());

  CHECK_THROWS_AS(cyclic_character(c3, 3), Error);
  CHECK_THROWS_AS(cyclic_character(symmetric_group(3), three_cycle(), 1), Error);
}

TEST_CASE("character values at inverses are conjugates") {
  for (int n = 2; n <= 6; ++n) {
    const auto g = cyclic_group(n);
    for (int k = 0; k < n; ++k) {
      const auto chi = cyclic_character(g, k);
      for (std::size_t a = 0; a < g->size(); ++a) {
        CHECK(std::abs(chi[g->inverse_index(a)] - std::conj(chi[a])) <= 1e-12);
      }
    }
  }
}

TEST_CASE("validate_character") {
  const auto s2 = symmetric_group(2);
  CHECK_NOTHROW(validate_character(s2, {1.0, -1.0}));
  try {
    validate_character(s2, {1.0, 2.0});
    FAIL("expected NotUnitModulus");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotUnitModulus);
  }
  // Parity everywhere except -1 on the 3-cycles.
  const auto s3 = symmetric_group(3);
  std::vector<std::complex<double>> values;
  for (const auto& p : s3->elements()) {
    const bool three_cycle_like = !p.is_identity() && p.sign() == 1;
    values.emplace_back(three_cycle_like ? -1.0 : p.sign());
  }
  try {
    validate_character(s3, values);
    FAIL("expected NotAHomomorphism");
  } catch (const HomomorphismError& e) {
    CHECK(e.code() == ErrorCode::NotAHomomorphism);
    const auto prod = s3->product_index(e.first(), e.second());
    CHECK(std::abs(values[prod] - values[e.first()] * values[e.second()]) > 1e-12);
  }
  CHECK_THROWS_AS(validate_character(s2, {1.0}), Error);
  CHECK_THROWS_AS(validate_character(s2, {-1.0, -1.0}), Error);
}
