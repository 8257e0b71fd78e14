#pragma once

#include <span>

namespace gmfineq {

/// u is weakly majorized by v (u <_w v): for every k the k largest entries
/// of u sum to at most the k largest of v, with tolerance
/// 1e-9 (1 + max(|U_k|, |V_k|)) at each k. The shorter vector is padded
/// with zeros. Inputs need not be sorted.
bool weak_majorizes(std::span<const double> v, std::span<const double> u);

/// Weak majorization plus equal totals (same tolerance form).
bool majorizes(std::span<const double> v, std::span<const double> u);

/// Smallest partial-sum gap min_k (V_k - U_k) over the padded, sorted
/// vectors; negative exactly where weak majorization fails.
double weak_majorization_margin(std::span<const double> v, std::span<const double> u);

/// sum u_i^p for u_i >= 0, p >= 1. Throws NegativeEntry / InvalidArgument.
double power_sum(std::span<const double> u, double p);

}  // namespace gmfineq
