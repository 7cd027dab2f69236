#include "cmclab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cmclab/error.hpp"

namespace cmclab {

namespace {

constexpr double kNonconformalThreshold = 0.05;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct PointMeasure {
  double E, Fc, G;
  Complex Qm;
  double Hm;
};

PointMeasure measure_point(const Grid<MinkowskiPoint>& f, const MinkowskiPoint& n, int i, int j,
                           double hx, double hy) {
  const MinkowskiPoint c = f(i, j);
  const MinkowskiPoint fx = (f(i + 1, j) - f(i - 1, j)) * (0.5 / hx);
  const MinkowskiPoint fy = (f(i, j + 1) - f(i, j - 1)) * (0.5 / hy);
  const MinkowskiPoint fxx = (f(i + 1, j) - 2.0 * c + f(i - 1, j)) * (1.0 / (hx * hx));
  const MinkowskiPoint fyy = (f(i, j + 1) - 2.0 * c + f(i, j - 1)) * (1.0 / (hy * hy));
  const MinkowskiPoint fxy =
      (f(i + 1, j + 1) - f(i + 1, j - 1) - f(i - 1, j + 1) + f(i - 1, j - 1)) *
      (0.25 / (hx * hy));

  PointMeasure m;
  m.E = inner(fx, fx);
  m.Fc = inner(fx, fy);
  m.G = inner(fy, fy);
  // f_zz = (f_xx - f_yy - 2i f_xy)/4, f_zzbar = (f_xx + f_yy)/4
  m.Qm = Complex(0.25 * (inner(fxx, n) - inner(fyy, n)), -0.5 * inner(fxy, n));
  m.Hm = 2.0 * (0.25 * (inner(fxx, n) + inner(fyy, n))) / m.E;
  return m;
}

MeasuredData empty_measurement(const GridSpec& g) {
  return {Grid<double>(g, kNaN), Grid<double>(g, kNaN), Grid<double>(g, kNaN),
          Grid<Complex>(g, Complex(kNaN, kNaN)), Grid<double>(g, kNaN), false};
}

void store(MeasuredData& out, int i, int j, const PointMeasure& m) {
  out.E(i, j) = m.E;
  out.Fc(i, j) = m.Fc;
  out.G(i, j) = m.G;
  out.Qm(i, j) = m.Qm;
  out.Hm(i, j) = m.Hm;
}

void flag_nonconformal(MeasuredData& out) {
  const GridSpec& g = out.grid();
  for (int j = 1; j < g.ny() - 1; ++j) {
    for (int i = 1; i < g.nx() - 1; ++i) {
      if (!(std::abs(out.Fc(i, j)) <= kNonconformalThreshold * std::abs(out.E(i, j)))) {
        out.nonconformal = true;
        return;
      }
    }
  }
}

void require_match(const H3SurfaceGrid& surface, const NormalField& normal) {
  if (!(surface.grid() == normal.grid())) {
    throw Error(ErrorKind::InvalidInput, "measure: surface and normal grids differ");
  }
}

double det3(double a0, double a1, double a2, double b0, double b1, double b2, double c0,
            double c1, double c2) {
  return a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) + a2 * (b0 * c1 - b1 * c0);
}

void require_lambda(double lambda) {
  if (!(lambda > 0.0)) throw Error(ErrorKind::InvalidInput, "spectral value must be positive");
  if (lambda == 1.0) {
    throw Error(ErrorKind::InvalidInput,
                "degenerate spectral value lambda = 1: the metric factor vanishes");
  }
}

template <typename Fn>
Grid<ClosedFormData> tabulate(const SurfaceData& data, Fn fn) {
  Grid<ClosedFormData> out(data.grid());
  for (std::size_t k = 0; k < out.values().size(); ++k) out.values()[k] = fn(data.u().values()[k]);
  return out;
}

}  // namespace

MeasuredData measure(const H3SurfaceGrid& surface, const NormalField& normal) {
  require_match(surface, normal);
  const GridSpec& g = surface.grid();
  MeasuredData out = empty_measurement(g);
#pragma omp parallel for schedule(static)
  for (int j = 1; j < g.ny() - 1; ++j) {
    for (int i = 1; i < g.nx() - 1; ++i) {
      store(out, i, j, measure_point(surface.points, normal.vectors(i, j), i, j, g.hx(), g.hy()));
    }
  }
  flag_nonconformal(out);
  return out;
}

namespace serial {

MeasuredData measure(const H3SurfaceGrid& surface, const NormalField& normal) {
  require_match(surface, normal);
  const GridSpec& g = surface.grid();
  MeasuredData out = empty_measurement(g);
  for (int j = 1; j < g.ny() - 1; ++j) {
    for (int i = 1; i < g.nx() - 1; ++i) {
      store(out, i, j, measure_point(surface.points, normal.vectors(i, j), i, j, g.hx(), g.hy()));
    }
  }
  flag_nonconformal(out);
  return out;
}

}  // namespace serial

NormalField reconstruct_normal(const H3SurfaceGrid& surface) {
  const GridSpec& g = surface.grid();
  const Grid<MinkowskiPoint>& f = surface.points;
  NormalField out{Grid<MinkowskiPoint>(g)};
#pragma omp parallel for schedule(static)
  for (int j = 1; j < g.ny() - 1; ++j) {
    for (int i = 1; i < g.nx() - 1; ++i) {
      const auto a = f(i, j).coords();
      const auto b = ((f(i + 1, j) - f(i - 1, j)) * (0.5 / g.hx())).coords();
      const auto c = ((f(i, j + 1) - f(i, j - 1)) * (0.5 / g.hy())).coords();
      // Euclidean cofactor vector w (w.a = w.b = w.c = 0); flipping the time
      // component turns Euclidean orthogonality into Minkowski orthogonality.
      const double w0 = det3(a[1], a[2], a[3], b[1], b[2], b[3], c[1], c[2], c[3]);
      const double w1 = -det3(a[0], a[2], a[3], b[0], b[2], b[3], c[0], c[2], c[3]);
      const double w2 = det3(a[0], a[1], a[3], b[0], b[1], b[3], c[0], c[1], c[3]);
      const double w3 = -det3(a[0], a[1], a[2], b[0], b[1], b[2], c[0], c[1], c[2]);
      MinkowskiPoint n{w0, w1, w2, -w3};
      out.vectors(i, j) = n * (1.0 / std::sqrt(inner(n, n)));
    }
  }
  return out;
}

double normal_agreement(const NormalField& a, const NormalField& b) {
  if (!(a.grid() == b.grid())) {
    throw Error(ErrorKind::InvalidInput, "normal_agreement: grids differ");
  }
  const GridSpec& g = a.grid();
  double worst = 0.0;
  for (int j = 1; j < g.ny() - 1; ++j) {
    for (int i = 1; i < g.nx() - 1; ++i) {
      const MinkowskiPoint& n = a.vectors(i, j);
      const MinkowskiPoint& m = b.vectors(i, j);
      // both lie in the spacelike tangent space of H^3, so the Minkowski norm is invariant
      const MinkowskiPoint minus = n - m, plus = n + m;
      const double d = std::sqrt(std::max(0.0, std::min(inner(minus, minus), inner(plus, plus))));
      if (!(d <= worst)) worst = d;
    }
  }
  return worst;
}

ClosedFormData closed_form_primary(double u, double Q, double H, double lambda) {
  require_lambda(lambda);
  const double gap = 1.0 / lambda - lambda;
  return {Q * Q * std::exp(-2.0 * u) * gap * gap, 0.5 * Q * H * gap,
          (1.0 / lambda + lambda) / gap};
}

ClosedFormData closed_form_shifted(double u, double Q, double H, double lambda) {
  require_lambda(lambda);
  const double gap = lambda - 1.0 / lambda;
  return {Q * Q * std::exp(2.0 * u) * gap * gap, 0.5 * Q * H * gap,
          (lambda + 1.0 / lambda) / gap};
}

Grid<ClosedFormData> closed_form_primary(const SurfaceData& data, double lambda) {
  require_lambda(lambda);
  return tabulate(data, [&](double u) { return closed_form_primary(u, data.Q(), data.H(), lambda); });
}

Grid<ClosedFormData> closed_form_shifted(const SurfaceData& data, double lambda) {
  require_lambda(lambda);
  return tabulate(data, [&](double u) { return closed_form_shifted(u, data.Q(), data.H(), lambda); });
}

double homothety_scale(double H, double lambda) { return 0.5 * H * (1.0 / lambda - lambda); }

double homothety_scale_shifted(double H, double lambda) {
  return 0.5 * H * (lambda - 1.0 / lambda);
}

ClosedFormData lawson_data(double u, double Q, double H, double s, LawsonOf which) {
  if (s == 0.0) throw Error(ErrorKind::InvalidInput, "lawson_data: homothety factor must be nonzero");
  const double conformal = which == LawsonOf::Surface ? std::exp(2.0 * u) : std::exp(-2.0 * u);
  const double hs = H / s;
  return {s * s * conformal, s * Q, std::sqrt(hs * hs + 1.0)};
}

Grid<ClosedFormData> lawson_data(const SurfaceData& data, double s, LawsonOf which) {
  if (s == 0.0) throw Error(ErrorKind::InvalidInput, "lawson_data: homothety factor must be nonzero");
  return tabulate(data, [&](double u) { return lawson_data(u, data.Q(), data.H(), s, which); });
}

}  // namespace cmclab
