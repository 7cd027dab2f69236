#include "cmclab/minkowski.hpp"

#include <cmath>
#include <sstream>

#include "cmclab/error.hpp"

namespace cmclab {

namespace {

constexpr double kHermitianTolerance = 1e-9;

const Mat2C kSigma{0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0};

void require_hermitian(const Mat2C& m, const char* who) {
  if (!is_hermitian(m)) {
    throw Error(ErrorKind::InvalidInput,
                std::string(who) + ": matrix is not Hermitian within tolerance");
  }
}

}  // namespace

double max_abs_diff(const MinkowskiPoint& p, const MinkowskiPoint& q) {
  return std::max({std::abs(p.x1 - q.x1), std::abs(p.x2 - q.x2),
                   std::abs(p.x3 - q.x3), std::abs(p.x0 - q.x0)});
}

H3Point::H3Point(const MinkowskiPoint& p) : p_(p) {
  const double defect = inner(p, p) + 1.0;
  if (!(p.x0 > 0.0) || !(std::abs(defect) <= kTolerance * p.x0 * p.x0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "point (" << p.x1 << ", " << p.x2 << ", " << p.x3 << ", " << p.x0
        << ") is not on the upper hyperboloid sheet";
    throw Error(ErrorKind::InvalidInput, msg.str());
  }
}

bool is_hermitian(const Mat2C& m) {
  return max_abs_diff(m, m.adjoint()) <= kHermitianTolerance * (1.0 + m.max_abs());
}

Mat2C to_hermitian(const MinkowskiPoint& p) {
  return {Complex(p.x0 + p.x3, 0.0), Complex(p.x1, -p.x2),
          Complex(p.x1, p.x2), Complex(p.x0 - p.x3, 0.0)};
}

MinkowskiPoint from_hermitian(const Mat2C& m) {
  require_hermitian(m, "from_hermitian");
  // Average the off-diagonal pair so round-off asymmetry does not bias x1, x2.
  const Complex off = 0.5 * (m.c + std::conj(m.b));
  const double p = m.a.real();
  const double q = m.d.real();
  return {off.real(), off.imag(), 0.5 * (p - q), 0.5 * (p + q)};
}

Complex minkowski_form(const Mat2C& x, const Mat2C& y) {
  return -0.5 * (x * kSigma * y.transpose() * kSigma).trace();
}

double minkowski_inner(const Mat2C& x, const Mat2C& y) {
  require_hermitian(x, "minkowski_inner");
  require_hermitian(y, "minkowski_inner");
  return minkowski_form(x, y).real();
}

}  // namespace cmclab
