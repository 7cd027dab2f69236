#include "cmclab/sym.hpp"

#include <cmath>
#include <sstream>

#include "cmclab/error.hpp"

namespace cmclab {

namespace {

constexpr double kDetTolerance = 1e-8;

// Hermitian part of F X F^*, read as a point of R^{3,1}.
MinkowskiPoint hermitian_point(const Mat2C& m) {
  const Mat2C h = 0.5 * (m + m.adjoint());
  return from_hermitian(h);
}

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* who) {
  if (!(a == b)) throw Error(ErrorKind::InvalidInput, std::string(who) + ": grids differ");
}

}  // namespace

H3SurfaceGrid surface_primary(const ExtendedFrame& frame) {
  const GridSpec& g = frame.grid();
  H3SurfaceGrid out{Grid<MinkowskiPoint>(g), frame.lambda,
                    frame.shifted ? SurfaceKind::Shifted : SurfaceKind::Primary};
  int bad_i = -1, bad_j = -1;
#pragma omp parallel for schedule(static)
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const Mat2C& f = frame.F(i, j);
      const MinkowskiPoint p = hermitian_point(f * f.adjoint());
      const double det = -inner(p, p);
      out.points(i, j) = p;
      if (!(p.x0 > 0.0) || !(std::abs(det - 1.0) <= kDetTolerance * p.x0 * p.x0)) {
#pragma omp critical
        {
          bad_i = i;
          bad_j = j;
        }
      }
    }
  }
  if (bad_i >= 0) {
    std::ostringstream msg;
    msg << "surface point (" << bad_i << ", " << bad_j
        << ") left the hyperboloid; frame is not unimodular";
    throw Error(ErrorKind::InternalConsistency, msg.str());
  }
  return out;
}

H3SurfaceGrid surface_shifted(const ExtendedFrame& frame) {
  if (frame.shifted) return surface_primary(frame);
  return surface_primary(shift_frame(frame));
}

NormalField normal_field(const ExtendedFrame& frame) {
  const GridSpec& g = frame.grid();
  const Mat2C e3 = Mat2C::diag(1.0, -1.0);
  NormalField out{Grid<MinkowskiPoint>(g)};
#pragma omp parallel for schedule(static)
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      out.vectors(i, j) = hermitian_point(congruence(frame.F(i, j), e3));
    }
  }
  return out;
}

ParallelResidual parallel_identity_residual(const ExtendedFrame& frame) {
  if (frame.shifted) {
    throw Error(ErrorKind::InvalidInput,
                "parallel_identity_residual expects the unshifted frame F");
  }
  const GridSpec& g = frame.grid();
  const double q = frame.lambda.q();
  const Mat2C d = spectral_shift(frame.lambda.lambda());
  const Mat2C e3 = Mat2C::diag(1.0, -1.0);
  const double ch = std::cosh(q), sh = std::sinh(q);
  ParallelResidual r;
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const Mat2C& f = frame.F(i, j);
      const Mat2C shifted = congruence(f * d, Mat2C::identity());
      const Mat2C rhs = ch * (f * f.adjoint()) - sh * congruence(f, e3);
      r.absolute = std::max(r.absolute, max_abs_diff(shifted, rhs));
      r.largest_entry = std::max(r.largest_entry, shifted.max_abs());
    }
  }
  return r;
}

double hyperbolic_distance(const H3Point& p, const H3Point& s) {
  const double c = -inner(p.point(), s.point());
  const double tol = 1e-9 * std::max(1.0, p.x0() * s.x0());
  if (c < 1.0 - tol) {
    std::ostringstream msg;
    msg << "hyperbolic_distance: -<p,s> = " << c << " < 1; points are not both on H^3";
    throw Error(ErrorKind::InvalidInput, msg.str());
  }
  return c <= 1.0 ? 0.0 : std::acosh(c);
}

Grid<double> surface_distances(const H3SurfaceGrid& a, const H3SurfaceGrid& b) {
  require_same_grid(a.grid(), b.grid(), "surface_distances");
  const GridSpec& g = a.grid();
  Grid<double> d(g);
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) d(i, j) = hyperbolic_distance(a.at(i, j), b.at(i, j));
  }
  return d;
}

NormalDefects normal_defects(const NormalField& normal, const H3SurfaceGrid& surface) {
  require_same_grid(normal.grid(), surface.grid(), "normal_defects");
  NormalDefects d;
  const auto& n = normal.vectors.values();
  const auto& f = surface.points.values();
  for (std::size_t k = 0; k < n.size(); ++k) {
    d.unit = std::max(d.unit, std::abs(inner(n[k], n[k]) - 1.0));
    d.orthogonal = std::max(d.orthogonal, std::abs(inner(n[k], f[k])));
  }
  return d;
}

}  // namespace cmclab
