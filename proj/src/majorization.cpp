#include "gmfineq/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "gmfineq/error.hpp"

namespace gmfineq {

namespace {

constexpr double kPartialSumTolerance = 1e-9;

// Zero-padded to `length`, then sorted descending; stable, so ties keep
// their original index order.
std::vector<double> sorted_desc(std::span<const double> x, std::size_t length) {
  std::vector<double> out(x.begin(), x.end());
  out.resize(length, 0.0);
  std::stable_sort(out.begin(), out.end(), std::greater<>());
  return out;
}

void require_finite(std::span<const double> x) {
  for (double v : x) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "weight vectors must be finite");
  }
}

struct PartialSums {
  std::vector<double> u;
  std::vector<double> v;
};

PartialSums partial_sums(std::span<const double> v, std::span<const double> u) {
  require_finite(v);
  require_finite(u);
  const std::size_t len = std::max(u.size(), v.size());
  PartialSums out{sorted_desc(u, len), sorted_desc(v, len)};
  std::partial_sum(out.u.begin(), out.u.end(), out.u.begin());
  std::partial_sum(out.v.begin(), out.v.end(), out.v.begin());
  return out;
}

bool within(double lower, double upper) {
  return lower <= upper + kPartialSumTolerance * (1.0 + std::max(std::abs(lower), std::abs(upper)));
}

}  // namespace

bool weak_majorizes(std::span<const double> v, std::span<const double> u) {
  const auto sums = partial_sums(v, u);
  for (std::size_t k = 0; k < sums.u.size(); ++k) {
    if (!within(sums.u[k], sums.v[k])) return false;
  }
  return true;
}

bool majorizes(std::span<const double> v, std::span<const double> u) {
  if (!weak_majorizes(v, u)) return false;
  const auto sums = partial_sums(v, u);
  if (sums.u.empty()) return true;
  return within(sums.v.back(), sums.u.back());
}

double weak_majorization_margin(std::span<const double> v, std::span<const double> u) {
  const auto sums = partial_sums(v, u);
  double margin = 0.0;
  for (std::size_t k = 0; k < sums.u.size(); ++k) {
    const double gap = sums.v[k] - sums.u[k];
    margin = k == 0 ? gap : std::min(margin, gap);
  }
  return margin;
}

double power_sum(std::span<const double> u, double p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "power sums need p >= 1");
  double total = 0.0;
  for (double x : u) {
    if (x < 0.0) throw Error(ErrorCode::NegativeEntry, "power sums need nonnegative entries");
    total += std::pow(x, p);
  }
  return total;
}

}  // namespace gmfineq
