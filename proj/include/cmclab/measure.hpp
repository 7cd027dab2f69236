#pragma once

#include "cmclab/sym.hpp"

namespace cmclab {

/// First fundamental form, Hopf function and mean curvature of a surface
/// grid, from central differences. Boundary entries are NaN.
struct MeasuredData {
  Grid<double> E, Fc, G;  ///< <f_x,f_x>, <f_x,f_y>, <f_y,f_y>
  Grid<Complex> Qm;       ///< <f_zz, N>
  Grid<double> Hm;        ///< 2 <f_zzbar, N> / E
  bool nonconformal = false;  ///< some interior |Fc|/E exceeded 0.05

  const GridSpec& grid() const { return E.spec(); }
};

/// The normal must be the exact one from the frame (normal_field).
/// Throws InvalidInput if the grids differ.
MeasuredData measure(const H3SurfaceGrid& surface, const NormalField& normal);

namespace serial {
MeasuredData measure(const H3SurfaceGrid& surface, const NormalField& normal);
}  // namespace serial

/// Unit spacelike vector Minkowski-orthogonal to f, f_x, f_y at interior
/// points, sign unspecified. Boundary entries are zero.
NormalField reconstruct_normal(const H3SurfaceGrid& surface);

/// Max over interior points of min(|N - M|, |N + M|), Minkowski norm of the difference.
double normal_agreement(const NormalField& a, const NormalField& b);

/// Metric factor of dx^2 + dy^2, Hopf function and mean curvature.
struct ClosedFormData {
  double metric_factor = 0.0;
  double hopf = 0.0;
  double mean = 0.0;
};

/// Data of F F^*: Q^2 e^{-2u} (lambda - 1/lambda)^2, QH(1/lambda - lambda)/2,
/// (1/lambda + lambda)/(1/lambda - lambda).
/// Throws InvalidInput for lambda == 1 (metric collapses) or lambda <= 0.
ClosedFormData closed_form_primary(double u, double Q, double H, double lambda);

/// Data of F D (F D)^*: Q^2 e^{2u} (lambda - 1/lambda)^2, QH(lambda - 1/lambda)/2,
/// (lambda + 1/lambda)/(lambda - 1/lambda).
ClosedFormData closed_form_shifted(double u, double Q, double H, double lambda);

Grid<ClosedFormData> closed_form_primary(const SurfaceData& data, double lambda);
Grid<ClosedFormData> closed_form_shifted(const SurfaceData& data, double lambda);

/// s = H (1/lambda - lambda) / 2, the homothety whose Lawson correspondent
/// (of the dual) is F F^*. The shifted surface uses -s.
double homothety_scale(double H, double lambda);
double homothety_scale_shifted(double H, double lambda);

enum class LawsonOf { Surface, Dual };

/// Lawson-correspondent data of the homothety s f (Surface) or s f^d (Dual):
/// metric s^2 e^{+-2u}, Hopf sQ, mean sqrt((H/s)^2 + 1).
/// Throws InvalidInput for s == 0.
ClosedFormData lawson_data(double u, double Q, double H, double s, LawsonOf which);
Grid<ClosedFormData> lawson_data(const SurfaceData& data, double s, LawsonOf which);

}  // namespace cmclab
