#pragma once

#include <optional>

#include "cmclab/grid.hpp"
#include "cmclab/surface_data.hpp"

namespace cmclab {

/// Real spectral value lambda = e^q with 0 < r < lambda < 1.
class SpectralParam {
 public:
  /// Throws InvalidInput unless 0 < r < lambda < 1.
  SpectralParam(double lambda, double r);

  double lambda() const { return lambda_; }
  double r() const { return r_; }
  double q() const { return q_; }

 private:
  double lambda_, r_, q_;
};

struct LaxPair {
  Mat2C U;  ///< F_z = F U
  Mat2C V;  ///< F_zbar = F V
};

/// U = 1/2 [[-u_z, 2 e^{-u} Q / lambda], [-H e^u, u_z]],
/// V = 1/2 [[u_zbar, H e^u], [-2 e^{-u} lambda Q, -u_zbar]].
/// lambda may be any nonzero complex number; throws InvalidInput for 0.
LaxPair lax_matrices(double u, Complex u_z, Complex u_zbar, double Q, double H, Complex lambda);

/// D = diag(lambda^{-1/2}, lambda^{1/2}), principal root.
Mat2C spectral_shift(double lambda);

struct ExtendedFrame {
  Grid<Mat2C> F;
  SpectralParam lambda;
  GridIndex base;
  bool shifted = false;  ///< true once multiplied by D on the right

  const GridSpec& grid() const { return F.spec(); }
};

enum class PathOrder {
  RowsThenColumns,  ///< base row first, then every column
  ColumnsThenRows,  ///< base column first, then every row
};

struct IntegrationOptions {
  std::optional<GridIndex> base;  ///< defaults to the grid center
  PathOrder order = PathOrder::RowsThenColumns;
  bool check_compatibility = true;
  double compatibility_tolerance = 1e-3;  ///< on max |gauss_residual|
  double det_tolerance = 1e-8;            ///< on max |det F - 1|
};

/// Integrates F_x = F(U+V), F_y = F i(U-V) with classical RK4 from
/// F(base) = I. Half-step coefficients come from cubic interpolation of
/// u, u_x, u_y along the integration line. Lines after the first one are
/// integrated in parallel.
///
/// Throws IncompatibleData if the Gauss residual exceeds the tolerance and
/// IntegrationFailure if det F drifts beyond det_tolerance anywhere.
ExtendedFrame integrate_frame(const SurfaceData& data, const SpectralParam& lambda,
                              const IntegrationOptions& options = {});

namespace serial {
/// Single-threaded reference for integrate_frame; results are bitwise equal.
ExtendedFrame integrate_frame(const SurfaceData& data, const SpectralParam& lambda,
                              const IntegrationOptions& options = {});
}  // namespace serial

/// The closed-form cylinder frame
///   [[cosh g, lambda^{-1/2} sinh g], [lambda^{1/2} sinh g, cosh g]],
///   g = i/4 (z / sqrt(lambda) + sqrt(lambda) conj(z)).
Mat2C cylinder_frame_closed_form(Complex z, double lambda);

/// Constant gauge G = diag(e^{i pi/4}, e^{-i pi/4}) with
/// F^{-1} dF = G (U dz + V dzbar) G^{-1} for the closed-form frame above and
/// the cylinder Lax pair: G^{-1} F G solves the Lax system exactly.
Mat2C cylinder_gauge();

/// Solution of the cylinder Lax system with F(z0) = I:
/// G^{-1} F_c(z0)^{-1} F_c(z) G.
Mat2C cylinder_frame_oracle(Complex z, Complex z0, double lambda);

/// max |F - oracle| over the grid for a cylinder frame.
double cylinder_oracle_error(const ExtendedFrame& frame);

/// F D at every point.
ExtendedFrame shift_frame(const ExtendedFrame& frame);

/// G F at every point, for a constant matrix G.
ExtendedFrame left_multiply(const Mat2C& g, const ExtendedFrame& frame);

struct DetDrift {
  double value = 0.0;
  GridIndex worst;
};

/// max |det F - 1| and where it occurs.
DetDrift det_drift(const ExtendedFrame& frame);

/// max entrywise |F_a - F_b| over the grid.
double max_frame_difference(const ExtendedFrame& a, const ExtendedFrame& b);

}  // namespace cmclab
