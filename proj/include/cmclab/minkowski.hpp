#pragma once

#include <array>

#include "cmclab/mat2.hpp"

namespace cmclab {

/// Point of R^{3,1} with metric (+++-), coordinates ordered (x1, x2, x3, x0).
struct MinkowskiPoint {
  double x1 = 0.0, x2 = 0.0, x3 = 0.0, x0 = 0.0;

  std::array<double, 4> coords() const { return {x1, x2, x3, x0}; }

  MinkowskiPoint& operator+=(const MinkowskiPoint& o) {
    x1 += o.x1; x2 += o.x2; x3 += o.x3; x0 += o.x0;
    return *this;
  }
  MinkowskiPoint& operator-=(const MinkowskiPoint& o) {
    x1 -= o.x1; x2 -= o.x2; x3 -= o.x3; x0 -= o.x0;
    return *this;
  }
  MinkowskiPoint& operator*=(double s) {
    x1 *= s; x2 *= s; x3 *= s; x0 *= s;
    return *this;
  }

  friend bool operator==(const MinkowskiPoint&, const MinkowskiPoint&) = default;
};

inline MinkowskiPoint operator+(MinkowskiPoint p, const MinkowskiPoint& q) { return p += q; }
inline MinkowskiPoint operator-(MinkowskiPoint p, const MinkowskiPoint& q) { return p -= q; }
inline MinkowskiPoint operator*(double s, MinkowskiPoint p) { return p *= s; }
inline MinkowskiPoint operator*(MinkowskiPoint p, double s) { return p *= s; }

/// x1 y1 + x2 y2 + x3 y3 - x0 y0.
inline double inner(const MinkowskiPoint& p, const MinkowskiPoint& q) {
  return p.x1 * q.x1 + p.x2 * q.x2 + p.x3 * q.x3 - p.x0 * q.x0;
}

/// Max-entry Euclidean distance of the coordinate tuples.
double max_abs_diff(const MinkowskiPoint& p, const MinkowskiPoint& q);

/// Point on the upper sheet of the hyperboloid x0^2 - |x|^2 = 1, x0 > 0.
class H3Point {
 public:
  /// Relative tolerance on <p,p> = -1, scaled by x0^2.
  static constexpr double kTolerance = 1e-7;

  /// Throws InvalidInput unless the hyperboloid constraints hold.
  explicit H3Point(const MinkowskiPoint& p);

  static H3Point origin() { return H3Point(MinkowskiPoint{0.0, 0.0, 0.0, 1.0}); }

  const MinkowskiPoint& point() const { return p_; }
  double x1() const { return p_.x1; }
  double x2() const { return p_.x2; }
  double x3() const { return p_.x3; }
  double x0() const { return p_.x0; }

 private:
  MinkowskiPoint p_;
};

/// ||M - M^*||_max <= 1e-9 (1 + ||M||_max).
bool is_hermitian(const Mat2C& m);

/// [[x0+x3, x1-i x2], [x1+i x2, x0-x3]].
Mat2C to_hermitian(const MinkowskiPoint& p);

/// Inverse of to_hermitian. Throws InvalidInput for non-Hermitian input.
MinkowskiPoint from_hermitian(const Mat2C& m);

/// -1/2 tr(X sigma Y^t sigma), sigma = [[0,-i],[i,0]], on Hermitian matrices.
/// Throws InvalidInput if either argument is not Hermitian.
double minkowski_inner(const Mat2C& x, const Mat2C& y);

/// The complex-bilinear extension of the same trace form, no Hermitian check.
/// For 2x2 matrices sigma Y^t sigma is the adjugate of Y.
Complex minkowski_form(const Mat2C& x, const Mat2C& y);

}  // namespace cmclab
