#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "cmclab/grid.hpp"

namespace cmclab {

/// Conformal exponent u of I = e^{2u}(dx^2 + dy^2) for a CMC immersion in a
/// normalized isothermic coordinate, with constant Hopf function Q = H/2.
///
/// u_x and u_y are carried alongside u so that frame integration is not
/// limited by the accuracy of finite-difference derivatives.
class SurfaceData {
 public:
  /// Q is set to H/2. Throws InvalidInput if H == 0 or the grids disagree.
  static SurfaceData normalized(Grid<double> u, Grid<double> u_x, Grid<double> u_y, double H);

  /// As above, with u_x and u_y from second-order finite differences
  /// (one-sided on the boundary).
  static SurfaceData normalized(Grid<double> u, double H);

  const GridSpec& grid() const { return u_.spec(); }
  const Grid<double>& u() const { return u_; }
  const Grid<double>& u_x() const { return u_x_; }
  const Grid<double>& u_y() const { return u_y_; }
  double Q() const { return Q_; }
  double H() const { return H_; }

 private:
  SurfaceData(Grid<double> u, Grid<double> u_x, Grid<double> u_y, double H);

  Grid<double> u_, u_x_, u_y_;
  double Q_, H_;
};

/// Round cylinder: u = 0, H = 1/2, Q = 1/4.
SurfaceData cylinder_data(const GridSpec& grid);

/// Solution of u'' = 4Q^2 e^{-2u} - H^2 e^{2u}, Q = H/2, sampled every `step`.
struct DelaunayProfile {
  double H = 0.0;
  double Q = 0.0;
  double x_start = 0.0;
  double step = 0.0;
  std::vector<double> u;
  std::vector<double> du;

  double x(std::size_t k) const { return x_start + static_cast<double>(k) * step; }
  /// 1/2 u'^2 + 2Q^2 e^{-2u} + 1/2 H^2 e^{2u} at sample k.
  double energy(std::size_t k) const;
};

/// Conserved energy of the one-variable Gauss equation.
double delaunay_energy(double u, double du, double H, double Q);

/// Classical RK4 from (u0, du0) at x_lo up to x_hi. The last sample lands on
/// x_hi exactly; the step is shrunk to divide the interval evenly.
/// Throws IntegrationBlowup (naming x) once |u| exceeds 50 or goes non-finite.
DelaunayProfile delaunay_profile(double H, double x_lo, double x_hi, double u0, double du0,
                                 double step);

/// Delaunay profile with initial data at grid.x_min(), integrated with steps
/// no larger than max_step and extended constantly in y.
SurfaceData delaunay_data(const GridSpec& grid, double H, double u0, double du0,
                          double max_step = 1e-3);

/// (u_xx + u_yy) - 4Q^2 e^{-2u} + H^2 e^{2u} with central differences.
/// Boundary entries are NaN.
Grid<double> gauss_residual(const SurfaceData& data);

/// Christoffel-dual data: u -> -u, same Q and H. An involution.
SurfaceData dual_data(const SurfaceData& data);

struct DerivativeSample {
  double u = 0.0;
  Complex u_z;     ///< (u_x - i u_y) / 2
  Complex u_zbar;  ///< (u_x + i u_y) / 2
};

/// Central-difference Wirtinger derivatives. Throws InvalidInput off the interior.
DerivativeSample derivative_samples(const SurfaceData& data, GridIndex p);

/// Max |v| over interior points.
double max_abs_interior(const Grid<double>& values);

/// Plain-text surface file. Layout:
///
///   # comment lines start with '#'
///   Q H nx ny
///   x y u [u_x u_y]      (nx*ny rows, x index fastest)
///
/// Q and H are stored independently; normalization is checked when the file
/// is turned into SurfaceData.
struct SurfaceFile {
  GridSpec grid;
  Grid<double> u;
  std::optional<Grid<double>> u_x, u_y;
  double Q = 0.0;
  double H = 0.0;

  bool is_normalized() const { return H == 2.0 * Q; }
};

/// Throws NotFound or Configuration.
SurfaceFile read_surface_file(const std::filesystem::path& path);

/// Writes all five columns with 17 significant digits.
void write_surface_file(const std::filesystem::path& path, const SurfaceData& data);

/// Throws Normalization unless H == 2Q exactly.
SurfaceData to_surface_data(const SurfaceFile& file);

}  // namespace cmclab
