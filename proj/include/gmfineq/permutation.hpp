#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace gmfineq {

/// Bijection on {0, ..., n-1}, stored as its image list i -> images[i].
class Permutation {
 public:
  Permutation() = default;

  /// Throws InvalidPermutation unless `images` is a bijection.
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  /// The cycle (c0 c1 ... ck) on n points.
  static Permutation cycle(int n, std::span<const int> points);
  static Permutation transposition(int n, int a, int b);

  int degree() const noexcept { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const noexcept { return images_; }

  /// Composition (this * other)(i) = this(other(i)).
  Permutation operator*(const Permutation& other) const;
  Permutation inverse() const;
  bool is_identity() const noexcept;

  /// +1 for even permutations, -1 for odd.
  int sign() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

inline constexpr std::size_t kDefaultGroupCap = 40320;

/// Finite subgroup of S_n with a fixed element order. The identity is
/// always element 0. Immutable once built.
class PermutationGroup {
 public:
  /// Adopts an explicit element list; validates identity, distinctness and
  /// closure under composition and inverse. Throws InvalidArgument.
  static PermutationGroup from_elements(int degree, std::vector<Permutation> elements,
                                        std::vector<std::size_t> generator_indices = {});

  int degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<Permutation>& elements() const noexcept { return elements_; }
  const Permutation& element(std::size_t i) const { return elements_[i]; }
  const std::vector<std::size_t>& generator_indices() const noexcept { return generator_indices_; }

  std::optional<std::size_t> index_of(const Permutation& p) const;
  /// Index of elements[a] * elements[b].
  std::size_t product_index(std::size_t a, std::size_t b) const;
  std::size_t inverse_index(std::size_t a) const;

 private:
  friend PermutationGroup closure(int, std::span<const Permutation>, std::size_t);

  PermutationGroup() = default;
  void build_index();

  int degree_ = 0;
  std::vector<Permutation> elements_;
  std::vector<std::size_t> generator_indices_;
  std::unordered_map<Permutation, std::size_t, PermutationHash> index_;
};

using GroupPtr = std::shared_ptr<const PermutationGroup>;

/// Smallest subgroup of S_n containing `generators`, enumerated breadth-first
/// from the identity (right multiplication by generators in the given order).
/// Throws GroupTooLarge past `cap` elements, InvalidPermutation on bad input.
PermutationGroup closure(int degree, std::span<const Permutation> generators,
                         std::size_t cap = kDefaultGroupCap);

GroupPtr make_group(PermutationGroup group);
GroupPtr symmetric_group(int n);
/// Cyclic group generated by the n-cycle (0 1 ... n-1).
GroupPtr cyclic_group(int n);

/// Degree-one character of a permutation group: values aligned with the
/// group's element order.
class LinearCharacter {
 public:
  const GroupPtr& group() const noexcept { return group_; }
  const std::vector<std::complex<double>>& values() const noexcept { return values_; }
  std::complex<double> operator[](std::size_t i) const { return values_[i]; }
  /// True when every value has zero imaginary part.
  bool is_real() const noexcept;

 private:
  friend LinearCharacter validate_character(GroupPtr, std::vector<std::complex<double>>);
  LinearCharacter(GroupPtr group, std::vector<std::complex<double>> values)
      : group_(std::move(group)), values_(std::move(values)) {}

  GroupPtr group_;
  std::vector<std::complex<double>> values_;
};

inline constexpr double kCharacterTolerance = 1e-12;

/// Accepts `values` iff they form a linear character of `group`. Throws
/// NotUnitModulus, or HomomorphismError naming the offending pair.
LinearCharacter validate_character(GroupPtr group, std::vector<std::complex<double>> values);

LinearCharacter sign_character(const GroupPtr& group);
LinearCharacter trivial_character(const GroupPtr& group);

/// chi(g^j) = exp(2 pi i j k / m) where g generates the cyclic group of order
/// m. Throws NotCyclic if the powers of g miss an element, InvalidArgument if
/// k is out of [0, m).
LinearCharacter cyclic_character(const GroupPtr& group, const Permutation& generator, int k);
/// Same, using the group's first generator.
LinearCharacter cyclic_character(const GroupPtr& group, int k);

}  // namespace gmfineq
