#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gmfineq/convex.hpp"
#include "gmfineq/gmf.hpp"
#include "gmfineq/matrixlab.hpp"

namespace gmfineq {

inline constexpr double kSlackTolerance = 1e-8;
inline constexpr std::size_t kMaxSubsetMatrices = 12;

enum class Verdict { Holds, Violated, Equality };
std::string_view to_string(Verdict v);

using ParamValue = std::variant<std::int64_t, double, std::string>;
using Params = std::map<std::string, ParamValue>;

/// One evaluation of an inequality written as lhs >= rhs.
struct SlackReport {
  std::string inequality_id;
  std::string spec_id;
  Params params;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::Holds;
  std::string instance_digest;
};

/// 1e-8 (1 + max(|lhs|, |rhs|)).
double slack_tolerance(double lhs, double rhs);
/// Violated iff slack < -tol; Equality iff |slack| <= tol.
Verdict classify(double slack, double tolerance);
/// Fills slack, tolerance and verdict from lhs and rhs.
SlackReport make_report(std::string inequality_id, std::string spec_id, Params params, double lhs,
                        double rhs, std::string digest);

/// FNV-1a (64-bit) over shape and IEEE-754 bit patterns, as 16 hex digits.
std::string instance_digest(std::span<const Matrix> matrices);
std::string instance_digest(std::span<const PsdMatrix> matrices);

/// Subsets of {A_1..A_m} as bitmasks: bit i <-> A_{i+1}.
using SubsetMask = std::uint32_t;

/// Canonical order: increasing popcount, then increasing numeric value.
std::vector<SubsetMask> canonical_subset_order(std::size_t m);
/// "{1,3}" style 1-based rendering.
std::string subset_label(SubsetMask mask);

/// d(A_J) for every nonempty J, with A_J the sum of the selected matrices.
class SubsetTable {
 public:
  /// Throws BadArity for m outside [1, 12], DimensionMismatch, and
  /// ResidueBreach / NegativeValue when a value is numerically unusable.
  SubsetTable(const GmfSpec& spec, std::span<const PsdMatrix> matrices);

  std::size_t m() const noexcept { return m_; }
  const std::string& spec_id() const noexcept { return spec_id_; }
  const std::string& digest() const noexcept { return digest_; }
  double value(SubsetMask mask) const { return values_.at(mask); }
  /// Values within this distance of zero are treated as zero.
  double zero_tolerance(SubsetMask mask) const { return zero_tol_.at(mask); }
  /// Largest |d(A_J)|, at least 1.
  double scale() const noexcept { return scale_; }

  /// x^r with near-zero handling: |x| within tolerance and (x < 0 or r < 1) -> 0.
  double power(SubsetMask mask, double r) const;
  /// Phi(x) with x within tolerance of zero clamped to [0, inf).
  double apply(SubsetMask mask, const ConvexFn& phi) const;

 private:
  std::size_t m_;
  std::string spec_id_;
  std::string digest_;
  std::vector<double> values_;
  std::vector<double> zero_tol_;
  double scale_ = 1.0;
};

/// The nonnegative decomposition d(A_J) = sum_{L subset of J, L nonempty} x_L.
struct SubsetWeights {
  std::size_t m = 0;
  /// Indexed by mask; entry 0 unused.
  std::vector<double> weights;
  /// d(A_J), indexed by mask.
  std::vector<double> values;
  double scale = 1.0;

  double weight(SubsetMask mask) const { return weights.at(mask); }
  double min_weight() const;
  /// Largest |d(A_J) - sum_{L subset of J} x_L| / (1 + |d(A_J)|).
  double reconstruction_error() const;
};

SubsetWeights decompose_subset_weights(const SubsetTable& table);
SubsetWeights decompose_subset_weights(const GmfSpec& spec, std::span<const PsdMatrix> matrices);
/// Report with lhs = min_J x_J, rhs = 0, tolerance 1e-8 * scale.
SlackReport subset_weight_report(const SubsetWeights& weights, const SubsetTable& table);

// Two matrices ---------------------------------------------------------------

/// d(A+B)^p >= d(A)^p + d(B)^p, p >= 1.
SlackReport slack_two_term_power(const GmfSpec& spec, const PsdMatrix& a, const PsdMatrix& b, double p);

/// d((A+B)^{1/n})^p >= d(A^{1/n})^p + d(B^{1/n})^p, n = spec degree, p >= 1.
/// For det specs the report also carries q = p / n.
SlackReport slack_root_superadditivity(const GmfSpec& spec, const PsdMatrix& a, const PsdMatrix& b, double p);

/// det(A+B)^q >= det(A)^q + det(B)^q, evaluated from determinants directly.
SlackReport slack_det_root_power(const PsdMatrix& a, const PsdMatrix& b, double q);

// Three matrices -------------------------------------------------------------

/// d(A+B+C)^p + d(A)^p >= d(A+B)^p + d(A+C)^p; p = 1 is the linear form.
SlackReport slack_three_term_basic(const GmfSpec& spec, const PsdMatrix& a, const PsdMatrix& b,
                                   const PsdMatrix& c, double p = 1.0);

/// d(A+B+C)^r + d(A)^r + d(B)^r + d(C)^r >= d(A+B)^r + d(A+C)^r + d(B+C)^r.
/// Any r > 0 is evaluated; the inequality is guaranteed for r in {1} u [2, inf).
SlackReport slack_three_term_power(const GmfSpec& spec, const PsdMatrix& a, const PsdMatrix& b,
                                   const PsdMatrix& c, double r);
SlackReport slack_three_term_power(const SubsetTable& table, double r);
/// Same with d^r replaced by Phi(d), guaranteed for Phi in P_2.
SlackReport slack_three_term_phi(const SubsetTable& table, const ConvexFn& phi);

/// Three-term power inequality for a product spec, built from per-block
/// triples (a[i], b[i], c[i]) of size n_i.
SlackReport slack_product_gmf(const GmfSpec& spec, std::span<const PsdMatrix> a, std::span<const PsdMatrix> b,
                              std::span<const PsdMatrix> c, double r);

// m matrices -----------------------------------------------------------------

/// sum_j (-1)^{m-j} sum_{|J|=j} d(A_J)^r >= 0; positive-sign terms form the
/// lhs and negative-sign terms the rhs. m >= 2.
SlackReport slack_alternating(const SubsetTable& table, double r);
SlackReport slack_alternating(const GmfSpec& spec, std::span<const PsdMatrix> matrices, double r);
SlackReport slack_alternating_phi(const SubsetTable& table, const ConvexFn& phi);

/// d(A_1+...+A_m) + (m-2) sum_j d(A_j) >= sum_{i<j} d(A_i+A_j). m >= 3.
SlackReport slack_pairwise(const SubsetTable& table);
SlackReport slack_pairwise(const GmfSpec& spec, std::span<const PsdMatrix> matrices);

struct Levels {
  int k = 1;
  int l = 2;
  int p = 3;
};

/// t_q = (1 / (q C(m,q))) sum_{|J|=q} d(A_J)^r;
/// slack = (l-k)(t_p - t_l) - (p-l)(t_l - t_k), reported as
/// lhs = (l-k) t_p + (p-l) t_k, rhs = (p-k) t_l. Throws BadLevels.
SlackReport slack_three_level(const SubsetTable& table, Levels levels, double r);
SlackReport slack_three_level(const GmfSpec& spec, std::span<const PsdMatrix> matrices, Levels levels, double r);

/// As slack_three_level with t_q = (1 / C(m,q)) sum_{|J|=q} Phi(d(A_J)).
SlackReport slack_convex_three_level(const SubsetTable& table, Levels levels, const ConvexFn& phi);
SlackReport slack_convex_three_level(const GmfSpec& spec, std::span<const PsdMatrix> matrices, Levels levels,
                                     const ConvexFn& phi);

/// d(A_1+...+A_m)^p >= sum_j d(A_{I_j})^p for a partition I_1..I_k of the
/// indices (0-based masks). Throws BadPartition.
SlackReport slack_partition_schur(const SubsetTable& table, std::span<const SubsetMask> partition, double p);
SlackReport slack_partition_schur(const GmfSpec& spec, std::span<const PsdMatrix> matrices,
                                  std::span<const SubsetMask> partition, double p);

/// sum_j (-1)^{m-j} C(m,j) j^r, the m-th forward difference of x^r at 0.
double finite_difference_f(int m, double r);

// Operator level -------------------------------------------------------------
// slack = lambda_min(LHS - RHS), lhs = slack, rhs = 0,
// tolerance = 1e-8 (1 + ||LHS - RHS||_max).

/// tensor^k (A+B) >= tensor^k A + tensor^k B.
SlackReport slack_tensor_two(const PsdMatrix& a, const PsdMatrix& b, int k);
/// tensor^n (A+B)^{1/n} >= tensor^n A^{1/n} + tensor^n B^{1/n}, n = size.
SlackReport slack_tensor_root(const PsdMatrix& a, const PsdMatrix& b);
/// tensor^n(A+B+C) + tensor^n A + tensor^n B + tensor^n C
///   >= tensor^n(A+B) + tensor^n(A+C) + tensor^n(B+C).
SlackReport slack_tensor_three(const PsdMatrix& a, const PsdMatrix& b, const PsdMatrix& c, int n);
/// Mixed-size form: every tensor^n X above becomes
/// tensor_i (tensor^{powers[i]} X_i) over blocks i.
SlackReport slack_tensor_product_three(std::span<const PsdMatrix> a, std::span<const PsdMatrix> b,
                                       std::span<const PsdMatrix> c, std::span<const int> powers);

}  // namespace gmfineq
