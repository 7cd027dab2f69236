#pragma once

#include "cmclab/frame.hpp"
#include "cmclab/minkowski.hpp"

namespace cmclab {

enum class SurfaceKind { Primary, Shifted };

/// Grid of points of H^3 produced from a frame as F F^*.
struct H3SurfaceGrid {
  Grid<MinkowskiPoint> points;
  SpectralParam lambda;
  SurfaceKind kind;

  const GridSpec& grid() const { return points.spec(); }
  H3Point at(int i, int j) const { return H3Point(points(i, j)); }
};

/// Unit spacelike field F diag(1,-1) F^*, normal to F F^*.
struct NormalField {
  Grid<MinkowskiPoint> vectors;

  const GridSpec& grid() const { return vectors.spec(); }
};

/// F F^* pointwise. For a shifted frame this is F D (F D)^*.
/// Throws InternalConsistency if a point has x0 <= 0 or |det - 1| > 1e-8.
H3SurfaceGrid surface_primary(const ExtendedFrame& frame);

/// F D (F D)^* pointwise.
H3SurfaceGrid surface_shifted(const ExtendedFrame& frame);

/// F diag(1,-1) F^* pointwise. On a shifted frame this is the normal of the
/// shifted surface, i.e. the primary normal transported along the geodesic.
NormalField normal_field(const ExtendedFrame& frame);

struct ParallelResidual {
  double absolute = 0.0;     ///< max entry of FD(FD)^* - (cosh q FF^* - sinh q N)
  double largest_entry = 0.0;  ///< max entry magnitude of FD(FD)^* over the grid
  double relative() const { return largest_entry > 0.0 ? absolute / largest_entry : absolute; }
};

/// Checks F D (F D)^* = cosh q F F^* - sinh q N pointwise, lambda = e^q.
ParallelResidual parallel_identity_residual(const ExtendedFrame& frame);

/// arccosh(-<p, s>). Values of -<p, s> in [1 - tol, 1) are clamped to
/// distance 0; below that throws InvalidInput.
double hyperbolic_distance(const H3Point& p, const H3Point& s);

/// Pointwise hyperbolic distance between two surfaces on the same grid.
Grid<double> surface_distances(const H3SurfaceGrid& a, const H3SurfaceGrid& b);

struct NormalDefects {
  double unit = 0.0;        ///< max |<N, N> - 1|
  double orthogonal = 0.0;  ///< max |<N, f>|
};

NormalDefects normal_defects(const NormalField& normal, const H3SurfaceGrid& surface);

}  // namespace cmclab
