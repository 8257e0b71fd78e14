#pragma once

#include <cmath>

#include "gmfineq/matrix.hpp"
#include "gmfineq/random.hpp"

namespace testing {

// Entries with real and imaginary parts uniform in [-1, 1).
inline gmfineq::Matrix random_complex(std::size_t n, gmfineq::SplitMix64& rng) {
  gmfineq::Matrix a(n, n);
  for (auto& z : a.data()) {
    const double re = rng.uniform(-1.0, 1.0);
    const double im = rng.uniform(-1.0, 1.0);
    z = {re, im};
  }
  return a;
}

inline double rel_err(gmfineq::Complex got, gmfineq::Complex want, double scale) {
  return std::abs(got - want) / std::max(1.0, scale);
}

}  // namespace testing
