#pragma once

#include <random>

#include "cmclab/mat2.hpp"
#include "cmclab/minkowski.hpp"

namespace cmclab::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20261015);
  return engine;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline Complex random_complex(double scale = 1.0) {
  return {uniform(-scale, scale), uniform(-scale, scale)};
}

inline MinkowskiPoint random_point(double scale = 2.0) {
  return {uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale),
          uniform(-scale, scale)};
}

/// Random unimodular matrix with entries bounded by max_entry.
inline Mat2C random_sl2c(double max_entry = 3.0) {
  for (;;) {
    Mat2C m{random_complex(), random_complex(), random_complex(), random_complex()};
    const Complex det = m.det();
    if (std::abs(det) < 0.2) continue;
    m *= 1.0 / std::sqrt(det);
    if (m.max_abs() <= max_entry) return m;
  }
}

/// Closeness relative to the larger magnitude, absolute near zero.
inline bool near(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace cmclab::testing
