#include "gmfineq/permutation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <string>

#include "gmfineq/error.hpp"

namespace gmfineq {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int n = degree();
  std::vector<bool> seen(images_.size(), false);
  for (int v : images_) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) {
      throw Error(ErrorCode::InvalidPermutation, "image list is not a bijection on {0..n-1}");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) images[static_cast<std::size_t>(i)] = i;
  return Permutation(std::move(images));
}

Permutation Permutation::cycle(int n, std::span<const int> points) {
  std::vector<int> images = identity(n).images();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const int from = points[i];
    const int to = points[(i + 1) % points.size()];
    if (from < 0 || from >= n) throw Error(ErrorCode::InvalidPermutation, "cycle point out of range");
    images[static_cast<std::size_t>(from)] = to;
  }
  return Permutation(std::move(images));
}

Permutation Permutation::transposition(int n, int a, int b) {
  const int pts[] = {a, b};
  return cycle(n, pts);
}

Permutation Permutation::operator*(const Permutation& other) const {
  if (other.degree() != degree()) {
    throw Error(ErrorCode::DimensionMismatch, "composing permutations of different degree");
  }
  Permutation out;
  out.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) {
    out.images_[i] = images_[static_cast<std::size_t>(other.images_[i])];
  }
  return out;
}

Permutation Permutation::inverse() const {
  Permutation out;
  out.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) {
    out.images_[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
  }
  return out;
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != static_cast<int>(i)) return false;
  }
  return true;
}

int Permutation::sign() const {
  std::vector<bool> visited(images_.size(), false);
  int cycles = 0;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (visited[i]) continue;
    ++cycles;
    for (std::size_t j = i; !visited[j]; j = static_cast<std::size_t>(images_[j])) visited[j] = true;
  }
  return ((degree() - cycles) % 2 == 0) ? 1 : -1;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int v : p.images()) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

void PermutationGroup::build_index() {
  index_.clear();
  index_.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (!index_.emplace(elements_[i], i).second) {
      throw Error(ErrorCode::InvalidArgument, "group elements are not pairwise distinct");
    }
  }
}

std::optional<std::size_t> PermutationGroup::index_of(const Permutation& p) const {
  if (auto it = index_.find(p); it != index_.end()) return it->second;
  return std::nullopt;
}

std::size_t PermutationGroup::product_index(std::size_t a, std::size_t b) const {
  auto idx = index_of(elements_[a] * elements_[b]);
  if (!idx) throw Error(ErrorCode::InvalidArgument, "group is not closed under composition");
  return *idx;
}

std::size_t PermutationGroup::inverse_index(std::size_t a) const {
  auto idx = index_of(elements_[a].inverse());
  if (!idx) throw Error(ErrorCode::InvalidArgument, "group is not closed under inverse");
  return *idx;
}

PermutationGroup closure(int degree, std::span<const Permutation> generators, std::size_t cap) {
  if (degree < 1) throw Error(ErrorCode::InvalidArgument, "degree must be at least 1");
  if (cap < 1) throw Error(ErrorCode::InvalidArgument, "cap must be at least 1");
  for (const auto& g : generators) {
    if (g.degree() != degree) {
      throw Error(ErrorCode::InvalidPermutation, "generator degree differs from group degree");
    }
  }

  PermutationGroup group;
  group.degree_ = degree;
  group.elements_.push_back(Permutation::identity(degree));
  group.index_.emplace(group.elements_.front(), 0);

  std::deque<std::size_t> frontier{0};
  while (!frontier.empty()) {
    const std::size_t current = frontier.front();
    frontier.pop_front();
    for (const auto& g : generators) {
      Permutation next = group.elements_[current] * g;
      if (group.index_.contains(next)) continue;
      if (group.elements_.size() >= cap) {
        throw Error(ErrorCode::GroupTooLarge,
                    "closure exceeds cap of " + std::to_string(cap) + " elements");
      }
      group.index_.emplace(next, group.elements_.size());
      frontier.push_back(group.elements_.size());
      group.elements_.push_back(std::move(next));
    }
  }
  for (const auto& g : generators) group.generator_indices_.push_back(*group.index_of(g));
  return group;
}

PermutationGroup PermutationGroup::from_elements(int degree, std::vector<Permutation> elements,
                                                 std::vector<std::size_t> generator_indices) {
  if (degree < 1) throw Error(ErrorCode::InvalidArgument, "degree must be at least 1");
  PermutationGroup group;
  group.degree_ = degree;
  group.elements_ = std::move(elements);
  for (const auto& e : group.elements_) {
    if (e.degree() != degree) throw Error(ErrorCode::InvalidPermutation, "element degree mismatch");
  }
  group.build_index();
  if (!group.index_of(Permutation::identity(degree))) {
    throw Error(ErrorCode::InvalidArgument, "element list lacks the identity");
  }
  for (std::size_t g : generator_indices) {
    if (g >= group.elements_.size()) throw Error(ErrorCode::InvalidArgument, "generator index out of range");
  }

  // Without explicit generators, pick them greedily: each pick at least
  // doubles the generated subgroup, so this stays logarithmic in |G|.
  std::vector<Permutation> gens;
  if (generator_indices.empty()) {
    PermutationGroup sub = closure(degree, gens, group.elements_.size());
    for (std::size_t i = 0; i < group.elements_.size(); ++i) {
      if (sub.index_of(group.elements_[i])) continue;
      generator_indices.push_back(i);
      gens.push_back(group.elements_[i]);
      try {
        sub = closure(degree, gens, group.elements_.size());
      } catch (const Error& e) {
        if (e.code() != ErrorCode::GroupTooLarge) throw;
        throw Error(ErrorCode::InvalidArgument, "element list is not closed under composition");
      }
    }
  } else {
    for (std::size_t g : generator_indices) gens.push_back(group.elements_[g]);
  }

  PermutationGroup generated;
  try {
    generated = closure(degree, gens, group.elements_.size());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::GroupTooLarge) throw;
    throw Error(ErrorCode::InvalidArgument, "element list is not closed under composition");
  }
  if (generated.size() != group.size()) {
    throw Error(ErrorCode::InvalidArgument, "generators do not generate the listed elements");
  }
  for (const auto& e : generated.elements()) {
    if (!group.index_of(e)) {
      throw Error(ErrorCode::InvalidArgument, "element list is not closed under composition");
    }
  }
  group.generator_indices_ = std::move(generator_indices);
  return group;
}

GroupPtr make_group(PermutationGroup group) {
  return std::make_shared<const PermutationGroup>(std::move(group));
}

GroupPtr symmetric_group(int n) {
  std::vector<Permutation> gens;
  if (n >= 2) {
    std::vector<int> pts(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pts[static_cast<std::size_t>(i)] = i;
    gens.push_back(Permutation::cycle(n, pts));
    gens.push_back(Permutation::transposition(n, 0, 1));
  }
  return make_group(closure(n, gens));
}

GroupPtr cyclic_group(int n) {
  std::vector<int> pts(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pts[static_cast<std::size_t>(i)] = i;
  const Permutation gen = Permutation::cycle(n, pts);
  return make_group(closure(n, std::span<const Permutation>(&gen, 1)));
}

bool LinearCharacter::is_real() const noexcept {
  return std::all_of(values_.begin(), values_.end(),
                     [](const auto& v) { return v.imag() == 0.0; });
}

LinearCharacter validate_character(GroupPtr group, std::vector<std::complex<double>> values) {
  if (!group) throw Error(ErrorCode::InvalidArgument, "null group");
  if (values.size() != group->size()) {
    throw Error(ErrorCode::DimensionMismatch, "character needs one value per group element");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(std::abs(std::abs(values[i]) - 1.0) <= kCharacterTolerance)) {
      throw Error(ErrorCode::NotUnitModulus,
                  "|chi| != 1 at element " + std::to_string(i));
    }
  }
  const std::size_t id = *group->index_of(Permutation::identity(group->degree()));
  if (std::abs(values[id] - 1.0) > kCharacterTolerance) {
    throw HomomorphismError(id, id, "chi(identity) != 1");
  }
  // A map with chi(e) = 1 that is multiplicative against every generator is
  // multiplicative everywhere, since each element is a word in the generators.
  for (std::size_t s = 0; s < group->size(); ++s) {
    for (std::size_t g : group->generator_indices()) {
      const std::size_t sg = group->product_index(s, g);
      if (std::abs(values[sg] - values[s] * values[g]) > kCharacterTolerance) {
        throw HomomorphismError(s, g,
                                "chi(st) != chi(s)chi(t) for elements " + std::to_string(s) +
                                    " and " + std::to_string(g));
      }
    }
  }
  return LinearCharacter(std::move(group), std::move(values));
}

LinearCharacter sign_character(const GroupPtr& group) {
  std::vector<std::complex<double>> values;
  values.reserve(group->size());
  for (const auto& p : group->elements()) values.emplace_back(p.sign(), 0.0);
  return validate_character(group, std::move(values));
}

LinearCharacter trivial_character(const GroupPtr& group) {
  return validate_character(group, std::vector<std::complex<double>>(group->size(), 1.0));
}

namespace {

// exp(2 pi i num / den), exact on the real and imaginary axes.
std::complex<double> root_of_unity(long long num, long long den) {
  num %= den;
  if (num == 0) return {1.0, 0.0};
  if (4 * num == den) return {0.0, 1.0};
  if (2 * num == den) return {-1.0, 0.0};
  if (4 * num == 3 * den) return {0.0, -1.0};
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den));
}

}  // namespace

LinearCharacter cyclic_character(const GroupPtr& group, const Permutation& generator, int k) {
  const std::size_t order = group->size();
  if (k < 0 || static_cast<std::size_t>(k) >= order) {
    throw Error(ErrorCode::InvalidArgument, "character index k must lie in [0, |G|)");
  }
  std::vector<std::complex<double>> values(order);
  std::vector<bool> hit(order, false);
  Permutation power = Permutation::identity(group->degree());
  for (std::size_t j = 0; j < order; ++j) {
    auto idx = group->index_of(power);
    if (!idx || hit[*idx]) {
      throw Error(ErrorCode::NotCyclic, "powers of the generator do not enumerate the group");
    }
    hit[*idx] = true;
    values[*idx] = root_of_unity(static_cast<long long>(j) * k, static_cast<long long>(order));
    power = power * generator;
  }
  if (!power.is_identity()) {
    throw Error(ErrorCode::NotCyclic, "generator order differs from group order");
  }
  return validate_character(group, std::move(values));
}

LinearCharacter cyclic_character(const GroupPtr& group, int k) {
  if (group->generator_indices().empty()) {
    if (group->size() == 1) return cyclic_character(group, group->element(0), k);
    throw Error(ErrorCode::NotCyclic, "group has no designated generator");
  }
  return cyclic_character(group, group->element(group->generator_indices().front()), k);
}

}  // namespace gmfineq
