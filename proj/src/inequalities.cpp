#include "gmfineq/inequalities.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <numeric>

#include "gmfineq/error.hpp"

namespace gmfineq {

namespace {

constexpr double kZeroTolerance = 1e-9;

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

void require_power(double p, const char* what) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorCode::InvalidArgument, std::string(what) + " needs p >= 1");
}

void require_positive(double r, const char* what) {
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorCode::InvalidArgument, std::string(what) + " needs r > 0");
}

// A GMF value of a PSD input, nonnegative in exact arithmetic.
struct Term {
  double value = 0.0;
  double tol = 0.0;
};

Term evaluate_term(const GmfSpec& spec, const Matrix& a) {
  const double scale = gmf_scale(a, spec.degree());
  const double value = gmf_checked(spec, a).value;
  const double tol = kZeroTolerance * scale;
  if (value < -tol) {
    throw Error(ErrorCode::NegativeValue, "GMF of a PSD matrix evaluated to " + std::to_string(value));
  }
  return {value, tol};
}

double term_power(const Term& t, double r) {
  if (t.value <= 0.0) return 0.0;
  if (r < 1.0 && t.value <= t.tol) return 0.0;
  return std::pow(t.value, r);
}

void require_size(const GmfSpec& spec, const PsdMatrix& a) {
  if (a.size() != spec.degree()) {
    throw Error(ErrorCode::DimensionMismatch,
                "spec " + spec.id() + " acts on size " + std::to_string(spec.degree()) + ", got " +
                    std::to_string(a.size()));
  }
}

std::string digest_of(std::initializer_list<const PsdMatrix*> list) {
  std::vector<Matrix> ms;
  for (const PsdMatrix* p : list) ms.push_back(p->matrix());
  return instance_digest(ms);
}

std::string partition_label(std::span<const SubsetMask> partition) {
  std::string out;
  for (std::size_t i = 0; i < partition.size(); ++i) {
    if (i) out += ',';
    out += subset_label(partition[i]);
  }
  return out;
}

SlackReport operator_report(std::string id, Params params, const Matrix& diff, std::string digest) {
  const double lambda = hermitian_eig(diff).eigenvalues.front();
  SlackReport rep;
  rep.inequality_id = std::move(id);
  rep.spec_id = "kron";
  rep.params = std::move(params);
  rep.lhs = lambda;
  rep.rhs = 0.0;
  rep.slack = lambda;
  rep.tolerance = kSlackTolerance * (1.0 + diff.max_abs());
  rep.verdict = classify(rep.slack, rep.tolerance);
  rep.instance_digest = std::move(digest);
  return rep;
}

void check_levels(const Levels& lv, std::size_t m) {
  if (!(1 <= lv.k && lv.k < lv.l && lv.l < lv.p && static_cast<std::size_t>(lv.p) <= m)) {
    throw Error(ErrorCode::BadLevels, "levels need 1 <= k < l < p <= m");
  }
}

Params level_params(std::size_t m, const Levels& lv) {
  return {{"m", static_cast<std::int64_t>(m)},
          {"k", static_cast<std::int64_t>(lv.k)},
          {"l", static_cast<std::int64_t>(lv.l)},
          {"p", static_cast<std::int64_t>(lv.p)}};
}

// (l-k) t_p + (p-l) t_k  versus  (p-k) t_l, with t given per level.
template <class T>
SlackReport level_report(std::string id, const SubsetTable& table, const Levels& lv, Params params, T&& t) {
  const double tk = t(lv.k);
  const double tl = t(lv.l);
  const double tp = t(lv.p);
  const double lhs = (lv.l - lv.k) * tp + (lv.p - lv.l) * tk;
  const double rhs = (lv.p - lv.k) * tl;
  return make_report(std::move(id), table.spec_id(), std::move(params), lhs, rhs, table.digest());
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds:
      return "HOLDS";
    case Verdict::Violated:
      return "VIOLATED";
    case Verdict::Equality:
      return "EQUALITY";
  }
  return "?";
}

double slack_tolerance(double lhs, double rhs) {
  return kSlackTolerance * (1.0 + std::max(std::abs(lhs), std::abs(rhs)));
}

Verdict classify(double slack, double tolerance) {
  if (slack < -tolerance) return Verdict::Violated;
  if (std::abs(slack) <= tolerance) return Verdict::Equality;
  return Verdict::Holds;
}

SlackReport make_report(std::string inequality_id, std::string spec_id, Params params, double lhs, double rhs,
                        std::string digest) {
  SlackReport rep;
  rep.inequality_id = std::move(inequality_id);
  rep.spec_id = std::move(spec_id);
  rep.params = std::move(params);
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.slack = lhs - rhs;
  rep.tolerance = slack_tolerance(lhs, rhs);
  rep.verdict = classify(rep.slack, rep.tolerance);
  rep.instance_digest = std::move(digest);
  return rep;
}

std::string instance_digest(std::span<const Matrix> matrices) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t word) {
    for (int i = 0; i < 8; ++i) {
      h ^= (word >> (8 * i)) & 0xFF;
      h *= 0x100000001b3ULL;
    }
  };
  mix(matrices.size());
  for (const Matrix& m : matrices) {
    mix(m.rows());
    mix(m.cols());
    for (const Complex& z : m.data()) {
      mix(std::bit_cast<std::uint64_t>(z.real()));
      mix(std::bit_cast<std::uint64_t>(z.imag()));
    }
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[i] = kHex[h & 0xF];
  return out;
}

std::string instance_digest(std::span<const PsdMatrix> matrices) {
  std::vector<Matrix> ms;
  ms.reserve(matrices.size());
  for (const auto& p : matrices) ms.push_back(p.matrix());
  return instance_digest(ms);
}

std::vector<SubsetMask> canonical_subset_order(std::size_t m) {
  std::vector<SubsetMask> order((std::size_t{1} << m) - 1);
  std::iota(order.begin(), order.end(), SubsetMask{1});
  std::stable_sort(order.begin(), order.end(),
                   [](SubsetMask a, SubsetMask b) { return std::popcount(a) < std::popcount(b); });
  return order;
}

std::string subset_label(SubsetMask mask) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < 32; ++i) {
    if (!(mask >> i & 1U)) continue;
    if (!first) out += ',';
    out += std::to_string(i + 1);
    first = false;
  }
  return out + "}";
}

SubsetTable::SubsetTable(const GmfSpec& spec, std::span<const PsdMatrix> matrices)
    : m_(matrices.size()), spec_id_(spec.id()), digest_(instance_digest(matrices)) {
  if (m_ < 1 || m_ > kMaxSubsetMatrices) {
    throw Error(ErrorCode::BadArity, "subset tables take 1 to 12 matrices, got " + std::to_string(m_));
  }
  for (const auto& a : matrices) require_size(spec, a);
  const std::size_t count = std::size_t{1} << m_;
  values_.assign(count, 0.0);
  zero_tol_.assign(count, 0.0);
  std::vector<Matrix> sums(count);
  sums[0] = Matrix::zeros(spec.degree());
  for (std::size_t mask = 1; mask < count; ++mask) {
    const int low = std::countr_zero(mask);
    sums[mask] = sums[mask & (mask - 1)] + matrices[low].matrix();
    const Term t = evaluate_term(spec, sums[mask]);
    values_[mask] = t.value;
    zero_tol_[mask] = t.tol;
    scale_ = std::max(scale_, std::abs(t.value));
  }
}

double SubsetTable::power(SubsetMask mask, double r) const {
  return term_power(Term{values_.at(mask), zero_tol_.at(mask)}, r);
}

double SubsetTable::apply(SubsetMask mask, const ConvexFn& phi) const { return phi(std::max(values_.at(mask), 0.0)); }

double SubsetWeights::min_weight() const {
  double lo = weights.size() > 1 ? weights[1] : 0.0;
  for (std::size_t mask = 1; mask < weights.size(); ++mask) lo = std::min(lo, weights[mask]);
  return lo;
}

double SubsetWeights::reconstruction_error() const {
  double worst = 0.0;
  for (std::size_t mask = 1; mask < values.size(); ++mask) {
    double total = 0.0;
    for (std::size_t sub = mask; sub > 0; sub = (sub - 1) & mask) total += weights[sub];
    worst = std::max(worst, std::abs(values[mask] - total) / (1.0 + std::abs(values[mask])));
  }
  return worst;
}

SubsetWeights decompose_subset_weights(const SubsetTable& table) {
  SubsetWeights out;
  out.m = table.m();
  out.scale = table.scale();
  const std::size_t count = std::size_t{1} << out.m;
  out.values.assign(count, 0.0);
  out.weights.assign(count, 0.0);
  for (SubsetMask mask : canonical_subset_order(out.m)) {
    out.values[mask] = table.value(mask);
    double x = out.values[mask];
    for (SubsetMask sub = (mask - 1) & mask; sub > 0; sub = (sub - 1) & mask) x -= out.weights[sub];
    out.weights[mask] = x;
  }
  return out;
}

SubsetWeights decompose_subset_weights(const GmfSpec& spec, std::span<const PsdMatrix> matrices) {
  return decompose_subset_weights(SubsetTable(spec, matrices));
}

SlackReport subset_weight_report(const SubsetWeights& weights, const SubsetTable& table) {
  SlackReport rep;
  rep.inequality_id = "subset_weights";
  rep.spec_id = table.spec_id();
  rep.params = {{"m", static_cast<std::int64_t>(weights.m)}};
  rep.lhs = weights.min_weight();
  rep.rhs = 0.0;
  rep.slack = rep.lhs;
  rep.tolerance = kSlackTolerance * weights.scale;
  rep.verdict = classify(rep.slack, rep.tolerance);
  rep.instance_digest = table.digest();
  return rep;
}

SlackReport slack_two_term_power(const GmfSpec& spec, const PsdMatrix& a, const PsdMatrix& b, double p) {
  require_power(p, "two_term_power");
  const PsdMatrix pair[] = {a, b};
  const SubsetTable t(spec, pair);
  return make_report("two_term_power", spec.id(), {{"p", p}}, t.power(3, p), t.power(1, p) + t.power(2, p),
                     t.digest());
}

SlackReport slack_root_superadditivity(const GmfSpec& spec, const PsdMatrix& a, const PsdMatrix& b, double p) {
  require_power(p, "root_superadditivity");
  require_size(spec, a);
  require_size(spec, b);
  const int n = static_cast<int>(spec.degree());
  const Term sum = evaluate_term(spec, matrix_root(a + b, n));
  const Term ta = evaluate_term(spec, matrix_root(a, n));
  const Term tb = evaluate_term(spec, matrix_root(b, n));
  Params params{{"p", p}};
  if (spec.kind() == GmfKind::Det) params["q"] = p / n;
  return make_report("root_superadditivity", spec.id(), std::move(params), term_power(sum, p),
                     term_power(ta, p) + term_power(tb, p), digest_of({&a, &b}));
}

SlackReport slack_det_root_power(const PsdMatrix& a, const PsdMatrix& b, double q) {
  require_positive(q, "det_root_power");
  const GmfSpec spec = GmfSpec::det(a.size());
  const PsdMatrix pair[] = {a, b};
  const SubsetTable t(spec, pair);
  return make_report("det_root_power", spec.id(), {{"q", q}}, t.power(3, q), t.power(1, q) + t.power(2, q),
                     t.digest());
}

SlackReport slack_three_term_basic(const GmfSpec& spec, const PsdMatrix& a, const PsdMatrix& b, const PsdMatrix& c,
                                   double p) {
  require_power(p, "three_term_basic");
  const PsdMatrix triple[] = {a, b, c};
  const SubsetTable t(spec, triple);
  return make_report("three_term_basic", spec.id(), {{"p", p}}, t.power(7, p) + t.power(1, p),
                     t.power(3, p) + t.power(5, p), t.digest());
}

SlackReport slack_three_term_power(const GmfSpec& spec, const PsdMatrix& a, const PsdMatrix& b, const PsdMatrix& c,
                                   double r) {
  const PsdMatrix triple[] = {a, b, c};
  return slack_three_term_power(SubsetTable(spec, triple), r);
}

SlackReport slack_three_term_power(const SubsetTable& t, double r) {
  require_positive(r, "three_term_power");
  if (t.m() != 3) throw Error(ErrorCode::BadArity, "three_term_power takes exactly 3 matrices");
  const double lhs = t.power(7, r) + t.power(1, r) + t.power(2, r) + t.power(4, r);
  const double rhs = t.power(3, r) + t.power(5, r) + t.power(6, r);
  return make_report("three_term_power", t.spec_id(), {{"r", r}}, lhs, rhs, t.digest());
}

SlackReport slack_three_term_phi(const SubsetTable& t, const ConvexFn& phi) {
  if (t.m() != 3) throw Error(ErrorCode::BadArity, "three_term_power takes exactly 3 matrices");
  const double lhs = t.apply(7, phi) + t.apply(1, phi) + t.apply(2, phi) + t.apply(4, phi);
  const double rhs = t.apply(3, phi) + t.apply(5, phi) + t.apply(6, phi);
  return make_report("three_term_power", t.spec_id(), {{"phi", phi.name}}, lhs, rhs, t.digest());
}

SlackReport slack_product_gmf(const GmfSpec& spec, std::span<const PsdMatrix> a, std::span<const PsdMatrix> b,
                              std::span<const PsdMatrix> c, double r) {
  if (spec.kind() != GmfKind::Product) throw Error(ErrorCode::InvalidArgument, "product_gmf needs a product spec");
  const auto sizes = spec.block_degrees();
  if (a.size() != sizes.size() || b.size() != sizes.size() || c.size() != sizes.size()) {
    throw Error(ErrorCode::BlockCountMismatch, "product_gmf needs one (A, B, C) triple per factor");
  }
  auto assemble = [&sizes](std::span<const PsdMatrix> blocks) {
    std::vector<Matrix> ms;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      if (blocks[i].size() != sizes[i]) throw Error(ErrorCode::DimensionMismatch, "block size does not match factor");
      ms.push_back(blocks[i].matrix());
    }
    return trusted_psd(block_diag(ms));
  };
  return slack_three_term_power(spec, assemble(a), assemble(b), assemble(c), r);
}

SlackReport slack_alternating(const SubsetTable& t, double r) {
  require_positive(r, "alternating");
  if (t.m() < 2) throw Error(ErrorCode::BadArity, "alternating needs m >= 2");
  double lhs = 0.0;
  double rhs = 0.0;
  for (SubsetMask mask : canonical_subset_order(t.m())) {
    const bool positive = (t.m() - std::popcount(mask)) % 2 == 0;
    (positive ? lhs : rhs) += t.power(mask, r);
  }
  return make_report("alternating", t.spec_id(), {{"m", static_cast<std::int64_t>(t.m())}, {"r", r}}, lhs, rhs,
                     t.digest());
}

SlackReport slack_alternating(const GmfSpec& spec, std::span<const PsdMatrix> matrices, double r) {
  return slack_alternating(SubsetTable(spec, matrices), r);
}

SlackReport slack_alternating_phi(const SubsetTable& t, const ConvexFn& phi) {
  if (t.m() < 2) throw Error(ErrorCode::BadArity, "alternating needs m >= 2");
  double lhs = 0.0;
  double rhs = 0.0;
  for (SubsetMask mask : canonical_subset_order(t.m())) {
    const bool positive = (t.m() - std::popcount(mask)) % 2 == 0;
    (positive ? lhs : rhs) += t.apply(mask, phi);
  }
  return make_report("alternating", t.spec_id(), {{"m", static_cast<std::int64_t>(t.m())}, {"phi", phi.name}}, lhs,
                     rhs, t.digest());
}

SlackReport slack_pairwise(const SubsetTable& t) {
  const std::size_t m = t.m();
  if (m < 3) throw Error(ErrorCode::BadArity, "pairwise needs m >= 3");
  const SubsetMask full = static_cast<SubsetMask>((std::size_t{1} << m) - 1);
  double singles = 0.0;
  double pairs = 0.0;
  for (SubsetMask mask : canonical_subset_order(m)) {
    const int size = std::popcount(mask);
    if (size == 1) singles += t.value(mask);
    if (size == 2) pairs += t.value(mask);
  }
  const double lhs = t.value(full) + static_cast<double>(m - 2) * singles;
  return make_report("pairwise", t.spec_id(), {{"m", static_cast<std::int64_t>(m)}}, lhs, pairs, t.digest());
}

SlackReport slack_pairwise(const GmfSpec& spec, std::span<const PsdMatrix> matrices) {
  return slack_pairwise(SubsetTable(spec, matrices));
}

SlackReport slack_three_level(const SubsetTable& table, Levels levels, double r) {
  require_positive(r, "three_level");
  const std::size_t m = table.m();
  check_levels(levels, m);
  const auto order = canonical_subset_order(m);
  Params params = level_params(m, levels);
  params["r"] = r;
  return level_report("three_level", table, levels, std::move(params), [&](int q) {
    double total = 0.0;
    for (SubsetMask mask : order) {
      if (std::popcount(mask) == q) total += table.power(mask, r);
    }
    return total / (q * binomial(static_cast<int>(m), q));
  });
}

SlackReport slack_three_level(const GmfSpec& spec, std::span<const PsdMatrix> matrices, Levels levels, double r) {
  check_levels(levels, matrices.size());
  return slack_three_level(SubsetTable(spec, matrices), levels, r);
}

SlackReport slack_convex_three_level(const SubsetTable& table, Levels levels, const ConvexFn& phi) {
  const std::size_t m = table.m();
  check_levels(levels, m);
  const auto order = canonical_subset_order(m);
  Params params = level_params(m, levels);
  params["phi"] = phi.name;
  return level_report("convex_three_level", table, levels, std::move(params), [&](int q) {
    double total = 0.0;
    for (SubsetMask mask : order) {
      if (std::popcount(mask) == q) total += table.apply(mask, phi);
    }
    return total / binomial(static_cast<int>(m), q);
  });
}

SlackReport slack_convex_three_level(const GmfSpec& spec, std::span<const PsdMatrix> matrices, Levels levels,
                                     const ConvexFn& phi) {
  check_levels(levels, matrices.size());
  return slack_convex_three_level(SubsetTable(spec, matrices), levels, phi);
}

SlackReport slack_partition_schur(const SubsetTable& t, std::span<const SubsetMask> partition, double p) {
  require_power(p, "partition_schur");
  const SubsetMask full = static_cast<SubsetMask>((std::size_t{1} << t.m()) - 1);
  SubsetMask seen = 0;
  for (SubsetMask block : partition) {
    if (block == 0 || (block & ~full) != 0 || (block & seen) != 0) {
      throw Error(ErrorCode::BadPartition, "blocks must be nonempty, disjoint subsets of the indices");
    }
    seen |= block;
  }
  if (seen != full) throw Error(ErrorCode::BadPartition, "blocks must cover every index");
  double rhs = 0.0;
  for (SubsetMask block : partition) rhs += t.power(block, p);
  return make_report("partition_schur", t.spec_id(), {{"p", p}, {"partition", partition_label(partition)}},
                     t.power(full, p), rhs, t.digest());
}

SlackReport slack_partition_schur(const GmfSpec& spec, std::span<const PsdMatrix> matrices,
                                  std::span<const SubsetMask> partition, double p) {
  return slack_partition_schur(SubsetTable(spec, matrices), partition, p);
}

double finite_difference_f(int m, double r) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "finite differences need m >= 1");
  require_positive(r, "finite_difference_f");
  long double total = 0.0L;
  for (int j = 1; j <= m; ++j) {
    const long double term = static_cast<long double>(binomial(m, j)) * std::pow(static_cast<long double>(j), r);
    total += ((m - j) % 2 == 0) ? term : -term;
  }
  return static_cast<double>(total);
}

SlackReport slack_tensor_two(const PsdMatrix& a, const PsdMatrix& b, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "tensor powers need k >= 1");
  const Matrix diff = kron_power(a + b, k) - kron_power(a, k) - kron_power(b, k);
  return operator_report("tensor_two", {{"k", static_cast<std::int64_t>(k)}}, diff, digest_of({&a, &b}));
}

SlackReport slack_tensor_root(const PsdMatrix& a, const PsdMatrix& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "tensor_root needs equal sizes");
  const int n = static_cast<int>(a.size());
  const Matrix diff = kron_power(matrix_root(a + b, n), n) - kron_power(matrix_root(a, n), n) -
                      kron_power(matrix_root(b, n), n);
  return operator_report("tensor_root", {{"n", static_cast<std::int64_t>(n)}}, diff, digest_of({&a, &b}));
}

SlackReport slack_tensor_three(const PsdMatrix& a, const PsdMatrix& b, const PsdMatrix& c, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "tensor powers need n >= 1");
  if (a.size() != b.size() || a.size() != c.size()) {
    throw Error(ErrorCode::DimensionMismatch, "tensor_three needs equal sizes");
  }
  auto t = [n](const Matrix& x) { return kron_power(x, n); };
  const Matrix ab = a.matrix() + b.matrix();
  Matrix diff = t(ab + c.matrix()) + t(a) + t(b) + t(c);
  diff -= t(ab);
  diff -= t(a.matrix() + c.matrix());
  diff -= t(b.matrix() + c.matrix());
  return operator_report("tensor_three", {{"n", static_cast<std::int64_t>(n)}}, diff, digest_of({&a, &b, &c}));
}

SlackReport slack_tensor_product_three(std::span<const PsdMatrix> a, std::span<const PsdMatrix> b,
                                       std::span<const PsdMatrix> c, std::span<const int> powers) {
  const std::size_t blocks = powers.size();
  if (blocks == 0 || a.size() != blocks || b.size() != blocks || c.size() != blocks) {
    throw Error(ErrorCode::BlockCountMismatch, "tensor_product_three needs one triple per power");
  }
  std::string label;
  for (std::size_t i = 0; i < blocks; ++i) {
    if (powers[i] < 1) throw Error(ErrorCode::InvalidArgument, "tensor powers need n_i >= 1");
    if (a[i].size() != b[i].size() || a[i].size() != c[i].size()) {
      throw Error(ErrorCode::DimensionMismatch, "block triples need equal sizes");
    }
    if (i) label += ',';
    label += std::to_string(powers[i]);
  }
  // tensor_i (tensor^{n_i} X_i), with X_i picked from a selection of {A, B, C}.
  auto term = [&](bool use_a, bool use_b, bool use_c) {
    Matrix out;
    for (std::size_t i = 0; i < blocks; ++i) {
      Matrix x = Matrix::zeros(a[i].size());
      if (use_a) x += a[i].matrix();
      if (use_b) x += b[i].matrix();
      if (use_c) x += c[i].matrix();
      const Matrix factor = kron_power(x, powers[i]);
      out = i == 0 ? factor : kron(out, factor);
    }
    return out;
  };
  Matrix diff = term(true, true, true) + term(true, false, false) + term(false, true, false) +
                term(false, false, true);
  diff -= term(true, true, false);
  diff -= term(true, false, true);
  diff -= term(false, true, true);
  std::vector<Matrix> all;
  for (auto list : {a, b, c}) {
    for (const auto& x : list) all.push_back(x.matrix());
  }
  return operator_report("tensor_product_three", {{"powers", label}}, diff, instance_digest(all));
}

}  // namespace gmfineq
