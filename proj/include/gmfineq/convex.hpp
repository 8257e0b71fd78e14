#pragma once

#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace gmfineq {

enum class FunctionClass {
  Convex,  // convex on [0, inf)
  Pk,      // derivatives of order 0..order all nonnegative on [0, inf)
};

inline constexpr int kAllOrders = std::numeric_limits<int>::max();

/// Named function on [0, inf) with a declared regularity class.
struct ConvexFn {
  std::string name;
  std::function<double(double)> evaluate;
  FunctionClass declared_class = FunctionClass::Convex;
  int order = 0;

  double operator()(double x) const { return evaluate(x); }
  /// P_k membership as declared (Convex-only functions belong to no P_k).
  bool in_class_p(int k) const { return declared_class == FunctionClass::Pk && order >= k; }
};

/// Registry lookup: "x", "x^2", "exp", or "x^R" for any real R >= 1
/// (e.g. "x^1.5", declared P_2). Throws UnknownId otherwise.
ConvexFn convex_fn(std::string_view name);
std::vector<std::string> registered_convex_fns();

/// f((x+y)/2) <= (f(x)+f(y))/2 + 1e-9 (1 + |f(x)| + |f(y)|) on a grid in [0, 8].
bool midpoint_convex_on_grid(const ConvexFn& fn);

/// Forward-difference estimate (step 1e-4) of the derivative of `order` at x.
double fd_derivative(const ConvexFn& fn, int order, double x);

/// Spot-checks the declared class: derivative signs via finite differences
/// on sample points, for orders up to min(order, 4).
bool check_declared_class(const ConvexFn& fn);

/// Largest j <= max_order such that sampled derivatives of orders 0..j are
/// all nonnegative.
int sampled_nonnegative_order(const ConvexFn& fn, int max_order);

}  // namespace gmfineq
