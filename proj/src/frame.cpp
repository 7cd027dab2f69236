#include "cmclab/frame.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cmclab/error.hpp"

namespace cmclab {

namespace {

const Complex kI(0.0, 1.0);

struct Sample {
  double u, ux, uy;
};

// Cubic interpolation at the midpoint of segment [k, k+1] of a line with n
// nodes, using the four-node window that contains the segment.
template <typename At>
double interp_mid(At at, int k, int n) {
  if (k == 0) return (5.0 * at(0) + 15.0 * at(1) - 5.0 * at(2) + at(3)) / 16.0;
  if (k == n - 2) {
    return (at(n - 4) - 5.0 * at(n - 3) + 15.0 * at(n - 2) + 5.0 * at(n - 1)) / 16.0;
  }
  return (-at(k - 1) + 9.0 * at(k) + 9.0 * at(k + 1) - at(k + 2)) / 16.0;
}

class Coefficients {
 public:
  Coefficients(const SurfaceData& data, double lambda) : data_(data), lambda_(lambda) {}

  Sample node(int i, int j) const {
    return {data_.u()(i, j), data_.u_x()(i, j), data_.u_y()(i, j)};
  }

  // Midpoint of (i, j)-(i+1, j).
  Sample mid_x(int i, int j) const {
    const int n = data_.grid().nx();
    return {interp_mid([&](int k) { return data_.u()(k, j); }, i, n),
            interp_mid([&](int k) { return data_.u_x()(k, j); }, i, n),
            interp_mid([&](int k) { return data_.u_y()(k, j); }, i, n)};
  }

  // Midpoint of (i, j)-(i, j+1).
  Sample mid_y(int i, int j) const {
    const int n = data_.grid().ny();
    return {interp_mid([&](int k) { return data_.u()(i, k); }, j, n),
            interp_mid([&](int k) { return data_.u_x()(i, k); }, j, n),
            interp_mid([&](int k) { return data_.u_y()(i, k); }, j, n)};
  }

  // F_x = F (U + V)
  Mat2C along_x(const Sample& s) const {
    const LaxPair l = lax(s);
    return l.U + l.V;
  }

  // F_y = F i (U - V)
  Mat2C along_y(const Sample& s) const {
    const LaxPair l = lax(s);
    return kI * (l.U - l.V);
  }

 private:
  LaxPair lax(const Sample& s) const {
    const Complex u_z(0.5 * s.ux, -0.5 * s.uy);
    const Complex u_zbar(0.5 * s.ux, 0.5 * s.uy);
    return lax_matrices(s.u, u_z, u_zbar, data_.Q(), data_.H(), lambda_);
  }

  const SurfaceData& data_;
  double lambda_;
};

Mat2C rk4_step(const Mat2C& f, const Mat2C& a0, const Mat2C& am, const Mat2C& a1, double h) {
  const Mat2C k1 = f * a0;
  const Mat2C k2 = (f + (0.5 * h) * k1) * am;
  const Mat2C k3 = (f + (0.5 * h) * k2) * am;
  const Mat2C k4 = (f + h * k3) * a1;
  return f + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

void check_preconditions(const SurfaceData& data, const IntegrationOptions& options,
                         GridIndex base) {
  if (!data.grid().contains(base)) {
    throw Error(ErrorKind::InvalidInput, "integrate_frame: base point outside the grid");
  }
  if (options.check_compatibility) {
    const double r = max_abs_interior(gauss_residual(data));
    if (!(r <= options.compatibility_tolerance)) {
      std::ostringstream msg;
      msg << "Gauss equation (Lax compatibility) violated: max residual " << r
          << " exceeds tolerance " << options.compatibility_tolerance;
      throw Error(ErrorKind::IncompatibleData, msg.str());
    }
  }
}

void check_unimodular(const ExtendedFrame& frame, double tolerance) {
  const DetDrift drift = det_drift(frame);
  if (!(drift.value <= tolerance)) {
    std::ostringstream msg;
    msg << "frame lost unimodularity: |det F - 1| = " << drift.value << " at grid point ("
        << drift.worst.i << ", " << drift.worst.j << ")";
    throw Error(ErrorKind::IntegrationFailure, msg.str());
  }
}

// Integrate along x on row j, outward from column i0 where F is already set.
template <typename NodeAt, typename MidAt>
void sweep_row(Grid<Mat2C>& F, int j, int i0, double h, NodeAt node, MidAt mid) {
  const int nx = F.spec().nx();
  for (int i = i0; i + 1 < nx; ++i) {
    F(i + 1, j) = rk4_step(F(i, j), node(i, j), mid(i, j), node(i + 1, j), h);
  }
  for (int i = i0; i > 0; --i) {
    F(i - 1, j) = rk4_step(F(i, j), node(i, j), mid(i - 1, j), node(i - 1, j), -h);
  }
}

template <typename NodeAt, typename MidAt>
void sweep_column(Grid<Mat2C>& F, int i, int j0, double h, NodeAt node, MidAt mid) {
  const int ny = F.spec().ny();
  for (int j = j0; j + 1 < ny; ++j) {
    F(i, j + 1) = rk4_step(F(i, j), node(i, j), mid(i, j), node(i, j + 1), h);
  }
  for (int j = j0; j > 0; --j) {
    F(i, j - 1) = rk4_step(F(i, j), node(i, j), mid(i, j - 1), node(i, j - 1), -h);
  }
}

}  // namespace

SpectralParam::SpectralParam(double lambda, double r) : lambda_(lambda), r_(r) {
  if (!(r > 0.0 && r < lambda && lambda < 1.0)) {
    std::ostringstream msg;
    msg << "spectral parameter requires 0 < r < lambda < 1, got r = " << r
        << ", lambda = " << lambda;
    throw Error(ErrorKind::InvalidInput, msg.str());
  }
  q_ = std::log(lambda);
}

LaxPair lax_matrices(double u, Complex u_z, Complex u_zbar, double Q, double H, Complex lambda) {
  if (lambda == Complex(0.0)) {
    throw Error(ErrorKind::InvalidInput, "lax_matrices: spectral parameter must be nonzero");
  }
  const double eu = std::exp(u);
  const double emu = 1.0 / eu;
  LaxPair l;
  l.U = {-0.5 * u_z, emu * Q / lambda, -0.5 * H * eu, 0.5 * u_z};
  l.V = {0.5 * u_zbar, 0.5 * H * eu, -emu * lambda * Q, -0.5 * u_zbar};
  return l;
}

Mat2C spectral_shift(double lambda) {
  const double s = std::sqrt(lambda);
  return Mat2C::diag(1.0 / s, s);
}

ExtendedFrame integrate_frame(const SurfaceData& data, const SpectralParam& lambda,
                              const IntegrationOptions& options) {
  const GridSpec& g = data.grid();
  const GridIndex base = options.base.value_or(g.center());
  check_preconditions(data, options, base);
  const Coefficients coef(data, lambda.lambda());
  const int nx = g.nx(), ny = g.ny();

  // Node and half-step coefficients, tabulated once.
  Grid<Mat2C> ax(g), ay(g), ax_mid(g), ay_mid(g);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const Sample s = coef.node(i, j);
      ax(i, j) = coef.along_x(s);
      ay(i, j) = coef.along_y(s);
      if (i + 1 < nx) ax_mid(i, j) = coef.along_x(coef.mid_x(i, j));
      if (j + 1 < ny) ay_mid(i, j) = coef.along_y(coef.mid_y(i, j));
    }
  }
  auto node_x = [&](int i, int j) -> const Mat2C& { return ax(i, j); };
  auto node_y = [&](int i, int j) -> const Mat2C& { return ay(i, j); };
  auto mid_x = [&](int i, int j) -> const Mat2C& { return ax_mid(i, j); };
  auto mid_y = [&](int i, int j) -> const Mat2C& { return ay_mid(i, j); };

  ExtendedFrame frame{Grid<Mat2C>(g), lambda, base, false};
  Grid<Mat2C>& F = frame.F;
  F[base] = Mat2C::identity();
  if (options.order == PathOrder::RowsThenColumns) {
    sweep_row(F, base.j, base.i, g.hx(), node_x, mid_x);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < nx; ++i) sweep_column(F, i, base.j, g.hy(), node_y, mid_y);
  } else {
    sweep_column(F, base.i, base.j, g.hy(), node_y, mid_y);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < ny; ++j) sweep_row(F, j, base.i, g.hx(), node_x, mid_x);
  }
  check_unimodular(frame, options.det_tolerance);
  return frame;
}

namespace serial {

ExtendedFrame integrate_frame(const SurfaceData& data, const SpectralParam& lambda,
                              const IntegrationOptions& options) {
  const GridSpec& g = data.grid();
  const GridIndex base = options.base.value_or(g.center());
  check_preconditions(data, options, base);
  const Coefficients coef(data, lambda.lambda());

  auto node_x = [&](int i, int j) { return coef.along_x(coef.node(i, j)); };
  auto node_y = [&](int i, int j) { return coef.along_y(coef.node(i, j)); };
  auto mid_x = [&](int i, int j) { return coef.along_x(coef.mid_x(i, j)); };
  auto mid_y = [&](int i, int j) { return coef.along_y(coef.mid_y(i, j)); };

  ExtendedFrame frame{Grid<Mat2C>(g), lambda, base, false};
  Grid<Mat2C>& F = frame.F;
  F[base] = Mat2C::identity();
  if (options.order == PathOrder::RowsThenColumns) {
    sweep_row(F, base.j, base.i, g.hx(), node_x, mid_x);
    for (int i = 0; i < g.nx(); ++i) sweep_column(F, i, base.j, g.hy(), node_y, mid_y);
  } else {
    sweep_column(F, base.i, base.j, g.hy(), node_y, mid_y);
    for (int j = 0; j < g.ny(); ++j) sweep_row(F, j, base.i, g.hx(), node_x, mid_x);
  }
  check_unimodular(frame, options.det_tolerance);
  return frame;
}

}  // namespace serial

Mat2C cylinder_frame_closed_form(Complex z, double lambda) {
  const double s = std::sqrt(lambda);
  const Complex g = 0.25 * kI * (z / s + s * std::conj(z));
  const Complex ch = std::cosh(g), sh = std::sinh(g);
  return {ch, sh / s, s * sh, ch};
}

Mat2C cylinder_gauge() {
  const Complex w = std::polar(1.0, std::numbers::pi / 4.0);
  return Mat2C::diag(w, std::conj(w));
}

Mat2C cylinder_frame_oracle(Complex z, Complex z0, double lambda) {
  const Mat2C g = cylinder_gauge();
  return g.inverse() * cylinder_frame_closed_form(z0, lambda).inverse() *
         cylinder_frame_closed_form(z, lambda) * g;
}

double cylinder_oracle_error(const ExtendedFrame& frame) {
  const GridSpec& g = frame.grid();
  const Complex z0 = g.z(frame.base.i, frame.base.j);
  const double lambda = frame.lambda.lambda();
  const Mat2C d = frame.shifted ? spectral_shift(lambda) : Mat2C::identity();
  double worst = 0.0;
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const Mat2C expect = cylinder_frame_oracle(g.z(i, j), z0, lambda) * d;
      worst = std::max(worst, max_abs_diff(frame.F(i, j), expect));
    }
  }
  return worst;
}

ExtendedFrame shift_frame(const ExtendedFrame& frame) {
  const Mat2C d = spectral_shift(frame.lambda.lambda());
  ExtendedFrame out = frame;
  for (Mat2C& f : out.F.values()) f = f * d;
  out.shifted = true;
  return out;
}

ExtendedFrame left_multiply(const Mat2C& g, const ExtendedFrame& frame) {
  ExtendedFrame out = frame;
  for (Mat2C& f : out.F.values()) f = g * f;
  return out;
}

DetDrift det_drift(const ExtendedFrame& frame) {
  const GridSpec& g = frame.grid();
  DetDrift d;
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const double v = std::abs(frame.F(i, j).det() - 1.0);
      if (!(v <= d.value)) {
        d.value = v;
        d.worst = {i, j};
      }
    }
  }
  return d;
}

double max_frame_difference(const ExtendedFrame& a, const ExtendedFrame& b) {
  if (!(a.grid() == b.grid())) {
    throw Error(ErrorKind::InvalidInput, "max_frame_difference: frames live on different grids");
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < a.F.values().size(); ++k) {
    worst = std::max(worst, max_abs_diff(a.F.values()[k], b.F.values()[k]));
  }
  return worst;
}

}  // namespace cmclab
