#include "gmfineq/convex.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

#include "gmfineq/error.hpp"

namespace gmfineq {

namespace {

constexpr double kStep = 1e-4;
constexpr std::array<double, 7> kSamplePoints = {0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0};

ConvexFn power_fn(std::string name, double r) {
  ConvexFn fn;
  fn.name = std::move(name);
  fn.evaluate = [r](double x) { return x <= 0.0 ? 0.0 : std::pow(x, r); };
  fn.declared_class = FunctionClass::Pk;
  // d^j/dx^j x^r = r(r-1)...(r-j+1) x^(r-j): nonnegative while every factor is.
  fn.order = std::floor(r) == r ? kAllOrders : static_cast<int>(std::floor(r)) + 1;
  return fn;
}

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

}  // namespace

ConvexFn convex_fn(std::string_view name) {
  if (name == "x") return power_fn("x", 1.0);
  if (name == "exp") {
    return ConvexFn{"exp", [](double x) { return std::exp(x); }, FunctionClass::Pk, kAllOrders};
  }
  if (name.starts_with("x^")) {
    const std::string_view exponent = name.substr(2);
    double r = 0.0;
    const auto [ptr, ec] = std::from_chars(exponent.data(), exponent.data() + exponent.size(), r);
    if (ec == std::errc() && ptr == exponent.data() + exponent.size() && std::isfinite(r) && r >= 1.0) {
      return power_fn(std::string(name), r);
    }
    throw Error(ErrorCode::InvalidArgument, "x^R is registered only for finite R >= 1");
  }
  throw Error(ErrorCode::UnknownId, "unknown convex function '" + std::string(name) + "'");
}

std::vector<std::string> registered_convex_fns() { return {"x", "x^1.5", "x^2", "exp", "x^R"}; }

bool midpoint_convex_on_grid(const ConvexFn& fn) {
  for (int i = 0; i <= 16; ++i) {
    for (int j = i + 1; j <= 16; ++j) {
      const double x = 0.5 * i;
      const double y = 0.5 * j;
      const double fx = fn(x);
      const double fy = fn(y);
      const double mid = fn(0.5 * (x + y));
      if (mid > 0.5 * (fx + fy) + 1e-9 * (1.0 + std::abs(fx) + std::abs(fy))) return false;
    }
  }
  return true;
}

double fd_derivative(const ConvexFn& fn, int order, double x) {
  double acc = 0.0;
  for (int i = 0; i <= order; ++i) {
    const double sign = ((order - i) % 2 == 0) ? 1.0 : -1.0;
    acc += sign * binomial(order, i) * fn(x + i * kStep);
  }
  return acc / std::pow(kStep, order);
}

int sampled_nonnegative_order(const ConvexFn& fn, int max_order) {
  for (int order = 0; order <= max_order; ++order) {
    for (double x : kSamplePoints) {
      double magnitude = 0.0;
      for (int i = 0; i <= order; ++i) magnitude = std::max(magnitude, std::abs(fn(x + i * kStep)));
      // Cancellation noise of an order-j difference quotient.
      const double noise = 64.0 * std::pow(2.0, order) * 2.2e-16 * (1.0 + magnitude) / std::pow(kStep, order);
      if (fd_derivative(fn, order, x) < -noise) return order - 1;
    }
  }
  return max_order;
}

bool check_declared_class(const ConvexFn& fn) {
  if (fn.declared_class == FunctionClass::Convex) return midpoint_convex_on_grid(fn);
  const int upto = std::min(fn.order, 4);
  return sampled_nonnegative_order(fn, upto) >= upto && (fn.order < 2 || midpoint_convex_on_grid(fn));
}

}  // namespace gmfineq
