#include "doctest.h"
#include "helpers.hpp"

#include "cmclab/error.hpp"
#include "cmclab/frame.hpp"

using namespace cmclab;
using namespace cmclab::testing;

namespace {

const Complex I(0.0, 1.0);

ExtendedFrame cylinder_frame(int n, double lambda, PathOrder order = PathOrder::RowsThenColumns) {
  const GridSpec g(-1.0, 1.0, -1.0, 1.0, n, n);
  IntegrationOptions o;
  o.order = order;
  return integrate_frame(cylinder_data(g), SpectralParam(lambda, 0.1), o);
}

// Delaunay data plus delta * sin(x) cos(y), which breaks the Gauss equation by O(delta).
SurfaceData perturbed_delaunay(const GridSpec& g, double delta) {
  const SurfaceData base = delaunay_data(g, 0.5, 0.3, 0.0);
  Grid<double> u = base.u(), ux = base.u_x(), uy = base.u_y();
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const double x = g.x(i), y = g.y(j);
      u(i, j) += delta * std::sin(x) * std::cos(y);
      ux(i, j) += delta * std::cos(x) * std::cos(y);
      uy(i, j) -= delta * std::sin(x) * std::sin(y);
    }
  }
  return SurfaceData::normalized(u, ux, uy, 0.5);
}

double two_path(const SurfaceData& data) {
  IntegrationOptions o;
  o.check_compatibility = false;
  const SpectralParam lambda(0.5, 0.1);
  const ExtendedFrame a = integrate_frame(data, lambda, o);
  o.order = PathOrder::ColumnsThenRows;
  const ExtendedFrame b = integrate_frame(data, lambda, o);
  return max_frame_difference(a, b);
}

}  // namespace

TEST_CASE("SpectralParam domain") {
  const SpectralParam p(0.5, 0.1);
  CHECK(p.q() == doctest::Approx(std::log(0.5)));
  CHECK(p.q() < 0.0);
  CHECK_THROWS_AS(SpectralParam(1.2, 0.1), Error);
  CHECK_THROWS_AS(SpectralParam(0.5, 0.6), Error);
  CHECK_THROWS_AS(SpectralParam(0.5, 0.0), Error);
  CHECK_THROWS_AS(SpectralParam(1.0, 0.5), Error);
}

TEST_CASE("lax matrices: cylinder values") {
  const double lambda = 0.37;
  const LaxPair l = lax_matrices(0.0, 0.0, 0.0, 0.25, 0.5, lambda);
  CHECK(max_abs_diff(l.U, Mat2C{0.0, 0.25 / lambda, -0.25, 0.0}) < 1e-16);
  CHECK(max_abs_diff(l.V, Mat2C{0.0, 0.25, -0.25 * lambda, 0.0}) < 1e-16);
  CHECK_THROWS_AS(lax_matrices(0.0, 0.0, 0.0, 0.25, 0.5, 0.0), Error);
}

TEST_CASE("lax matrices: traceless, and V = -U^* on the unit circle") {
  for (int n = 0; n < 100; ++n) {
    const double u = uniform(-1.0, 1.0);
    const double ux = uniform(-1.0, 1.0), uy = uniform(-1.0, 1.0);
    const Complex uz(0.5 * ux, -0.5 * uy), uzb(0.5 * ux, 0.5 * uy);
    const double H = uniform(0.1, 2.0);
    const LaxPair real_l = lax_matrices(u, uz, uzb, 0.5 * H, H, uniform(0.1, 0.9));
    CHECK(std::abs(real_l.U.trace()) == 0.0);
    CHECK(std::abs(real_l.V.trace()) == 0.0);

    const Complex on_circle = std::polar(1.0, uniform(-3.0, 3.0));
    const LaxPair l = lax_matrices(u, uz, uzb, 0.5 * H, H, on_circle);
    CHECK(max_abs_diff(l.V, -1.0 * l.U.adjoint()) < 1e-14);
  }
}

TEST_CASE("closed-form cylinder frame") {
  CHECK(cylinder_frame_closed_form(0.0, 0.5) == Mat2C::identity());
  for (int n = 0; n < 50; ++n) {
    const Mat2C f = cylinder_frame_closed_form(random_complex(2.0), uniform(0.05, 0.95));
    CHECK(std::abs(f.det() - 1.0) < 1e-12);
  }
  const double x = 0.7;
  const Mat2C f = cylinder_frame_closed_form(x, 1.0);
  const Mat2C expect{std::cos(x / 2), I * std::sin(x / 2), I * std::sin(x / 2), std::cos(x / 2)};
  CHECK(max_abs_diff(f, expect) < 1e-15);
}

TEST_CASE("cylinder oracle solves the displayed Lax system; the raw formula needs the gauge") {
  const double lambda = 0.5;
  const LaxPair l = lax_matrices(0.0, 0.0, 0.0, 0.25, 0.5, lambda);
  const Mat2C ax = l.U + l.V, ay = I * (l.U - l.V);
  const double h = 1e-5;
  for (int n = 0; n < 20; ++n) {
    const Complex z = random_complex(1.0);
    auto dx = [&](auto f) { return (f(z + h) - f(z - h)) * (0.5 / h); };
    auto dy = [&](auto f) { return (f(z + I * h) - f(z - I * h)) * (0.5 / h); };
    auto oracle = [&](Complex w) { return cylinder_frame_oracle(w, 0.0, lambda); };
    auto raw = [&](Complex w) { return cylinder_frame_closed_form(w, lambda); };
    CHECK(max_abs_diff(dx(oracle), oracle(z) * ax) < 1e-9);
    CHECK(max_abs_diff(dy(oracle), oracle(z) * ay) < 1e-9);
    if (std::abs(z) > 0.3) CHECK(max_abs_diff(dx(raw), raw(z) * ax) > 1e-3);
  }
  CHECK(std::abs(cylinder_gauge().det() - 1.0) < 1e-15);
}

TEST_CASE("shift_frame") {
  CHECK(max_abs_diff(spectral_shift(0.25), Mat2C::diag(2.0, 0.5)) < 1e-16);
  const GridSpec g(-1, 1, -1, 1, 5, 5);
  ExtendedFrame frame{Grid<Mat2C>(g), SpectralParam(0.25, 0.1), g.center(), false};
  for (Mat2C& f : frame.F.values()) f = random_sl2c();
  frame.F[g.center()] = Mat2C::identity();
  const ExtendedFrame s = shift_frame(frame);
  CHECK(s.shifted);
  for (std::size_t k = 0; k < g.size(); ++k) {
    CHECK(std::abs(s.F.values()[k].det() - frame.F.values()[k].det()) < 1e-14);
  }
  const double q = std::log(0.25);
  const Mat2C at_base = congruence(s.F[g.center()], Mat2C::identity());
  CHECK(max_abs_diff(at_base, Mat2C::diag(std::exp(-q), std::exp(q))) < 1e-15);
  CHECK(max_abs_diff(at_base, to_hermitian({0, 0, -std::sinh(q), std::cosh(q)})) < 1e-15);
}

TEST_CASE("integrate_frame: cylinder against the closed form") {
  const ExtendedFrame f = cylinder_frame(201, 0.5);
  CHECK(f.F[f.base] == Mat2C::identity());
  CHECK(f.base == GridIndex{100, 100});
  const double err = cylinder_oracle_error(f);
  CHECK(err <= 1e-6);
  CHECK(det_drift(f).value <= 1e-8);

  // fourth order: halving h divides the error by about 16
  const double coarse = cylinder_oracle_error(cylinder_frame(26, 0.5));
  const double fine = cylinder_oracle_error(cylinder_frame(51, 0.5));
  const double ratio = coarse / fine;
  MESSAGE("oracle error h=0.08: " << coarse << ", h=0.04: " << fine << ", ratio " << ratio);
  CHECK(ratio >= 12.0);
  CHECK(ratio <= 20.0);
}

TEST_CASE("integrate_frame: non-central base point") {
  const GridSpec g(-1.0, 1.0, -1.0, 1.0, 41, 41);
  IntegrationOptions o;
  o.base = GridIndex{3, 30};
  const ExtendedFrame f = integrate_frame(cylinder_data(g), SpectralParam(0.3, 0.1), o);
  CHECK(f.F(3, 30) == Mat2C::identity());
  CHECK(cylinder_oracle_error(f) < 1e-6);
  o.base = GridIndex{41, 0};
  CHECK_THROWS_AS(integrate_frame(cylinder_data(g), SpectralParam(0.3, 0.1), o), Error);
}

TEST_CASE("integrate_frame: two paths agree on compatible data") {
  const GridSpec g(-1.0, 1.0, -1.0, 1.0, 201, 201);
  const SurfaceData cyl = cylinder_data(g);
  CHECK(two_path(cyl) <= 1e-6);
  const SurfaceData del = delaunay_data(g, 0.5, 0.3, 0.0);
  CHECK(two_path(del) <= 1e-6);
}

TEST_CASE("integrate_frame: serial reference and OpenMP kernel agree bitwise") {
  const GridSpec g(-1.0, 1.0, -0.5, 0.5, 61, 31);
  const SurfaceData data = perturbed_delaunay(g, 0.0);
  const SpectralParam lambda(0.6, 0.1);
  for (PathOrder order : {PathOrder::RowsThenColumns, PathOrder::ColumnsThenRows}) {
    IntegrationOptions o;
    o.order = order;
    const ExtendedFrame a = serial::integrate_frame(data, lambda, o);
    const ExtendedFrame b = integrate_frame(data, lambda, o);
    CHECK(a.F.values() == b.F.values());
  }
}

TEST_CASE("integrate_frame: compatibility precondition and linkage") {
  const GridSpec g(-1.0, 1.0, -1.0, 1.0, 101, 101);
  try {
    integrate_frame(perturbed_delaunay(g, 1e-2), SpectralParam(0.5, 0.1));
    FAIL("expected incompatible-data");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IncompatibleData);
  }
  const double d0 = two_path(perturbed_delaunay(g, 0.0));
  const double d3 = two_path(perturbed_delaunay(g, 1e-3));
  const double d2 = two_path(perturbed_delaunay(g, 1e-2));
  MESSAGE("two-path discrepancy: " << d0 << " / " << d3 << " / " << d2);
  CHECK(d0 < d3);
  CHECK(d3 < d2);
  CHECK(d2 / d3 == doctest::Approx(10.0).epsilon(0.2));
}

TEST_CASE("integrate_frame: unimodularity is monitored") {
  const GridSpec g(-1.0, 1.0, -1.0, 1.0, 11, 11);
  IntegrationOptions o;
  o.det_tolerance = 1e-18;  // unattainable: forces the failure path
  o.check_compatibility = false;
  try {
    integrate_frame(delaunay_data(g, 0.5, 0.3, 0.0), SpectralParam(0.5, 0.1), o);
    FAIL("expected integration-failure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IntegrationFailure);
    CHECK(std::string(e.what()).find("grid point") != std::string::npos);
  }
}

TEST_CASE("left_multiply") {
  const ExtendedFrame f = cylinder_frame(41, 0.5);
  const Mat2C g = random_sl2c();
  const ExtendedFrame gf = left_multiply(g, f);
  CHECK(max_abs_diff(gf.F(3, 4), g * f.F(3, 4)) == 0.0);
  CHECK(std::abs(det_drift(gf).value - det_drift(f).value) < 1e-13);
}
