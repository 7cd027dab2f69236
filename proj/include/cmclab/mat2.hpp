#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

namespace cmclab {

using Complex = std::complex<double>;

/// 2x2 complex matrix [[a, b], [c, d]].
struct Mat2C {
  Complex a{}, b{}, c{}, d{};

  static constexpr Mat2C identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Mat2C diag(Complex p, Complex q) { return {p, 0.0, 0.0, q}; }

  Complex det() const { return a * d - b * c; }
  Complex trace() const { return a + d; }

  Mat2C adjoint() const {
    return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)};
  }
  Mat2C transpose() const { return {a, c, b, d}; }

  /// Inverse of a matrix with unit determinant is its adjugate.
  Mat2C inverse() const {
    const Complex k = 1.0 / det();
    return {d * k, -b * k, -c * k, a * k};
  }

  double max_abs() const {
    return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  }

  Mat2C& operator+=(const Mat2C& o) {
    a += o.a; b += o.b; c += o.c; d += o.d;
    return *this;
  }
  Mat2C& operator-=(const Mat2C& o) {
    a -= o.a; b -= o.b; c -= o.c; d -= o.d;
    return *this;
  }
  Mat2C& operator*=(Complex s) {
    a *= s; b *= s; c *= s; d *= s;
    return *this;
  }

  friend bool operator==(const Mat2C&, const Mat2C&) = default;
};

inline Mat2C operator+(Mat2C x, const Mat2C& y) { return x += y; }
inline Mat2C operator-(Mat2C x, const Mat2C& y) { return x -= y; }
inline Mat2C operator*(Mat2C x, Complex s) { return x *= s; }
inline Mat2C operator*(Complex s, Mat2C x) { return x *= s; }
inline Mat2C operator*(Mat2C x, double s) { return x *= Complex(s); }
inline Mat2C operator*(double s, Mat2C x) { return x *= Complex(s); }

inline Mat2C operator*(const Mat2C& x, const Mat2C& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
          x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

inline double max_abs_diff(const Mat2C& x, const Mat2C& y) {
  return (x - y).max_abs();
}

/// M X M^* for the Hermitian model's SL2C action.
inline Mat2C congruence(const Mat2C& m, const Mat2C& x) {
  return m * x * m.adjoint();
}

}  // namespace cmclab
