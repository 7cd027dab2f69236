#include "cmclab/surface_data.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "cmclab/error.hpp"

namespace cmclab {

namespace {

constexpr double kBlowupBound = 50.0;

double gauss_rhs(double u, double H, double Q) {
  return 4.0 * Q * Q * std::exp(-2.0 * u) - H * H * std::exp(2.0 * u);
}

// Second-order differences along one grid direction, one-sided at the ends.
Grid<double> difference(const Grid<double>& u, bool along_x) {
  const GridSpec& g = u.spec();
  Grid<double> out(g);
  const int n = along_x ? g.nx() : g.ny();
  const double h = along_x ? g.hx() : g.hy();
  auto at = [&](int line, int k) { return along_x ? u(k, line) : u(line, k); };
  const int lines = along_x ? g.ny() : g.nx();
  for (int line = 0; line < lines; ++line) {
    for (int k = 0; k < n; ++k) {
      double d;
      if (k == 0) {
        d = (-3.0 * at(line, 0) + 4.0 * at(line, 1) - at(line, 2)) / (2.0 * h);
      } else if (k == n - 1) {
        d = (3.0 * at(line, n - 1) - 4.0 * at(line, n - 2) + at(line, n - 3)) / (2.0 * h);
      } else {
        d = (at(line, k + 1) - at(line, k - 1)) / (2.0 * h);
      }
      if (along_x) {
        out(k, line) = d;
      } else {
        out(line, k) = d;
      }
    }
  }
  return out;
}

[[noreturn]] void bad_file(const std::filesystem::path& path, std::size_t line,
                           const std::string& why) {
  throw Error(ErrorKind::Configuration,
              path.string() + ":" + std::to_string(line) + ": " + why);
}

}  // namespace

SurfaceData::SurfaceData(Grid<double> u, Grid<double> u_x, Grid<double> u_y, double H)
    : u_(std::move(u)), u_x_(std::move(u_x)), u_y_(std::move(u_y)), Q_(0.5 * H), H_(H) {
  if (H == 0.0 || !std::isfinite(H)) {
    throw Error(ErrorKind::InvalidInput, "mean curvature H must be finite and nonzero");
  }
  if (!(u_x_.spec() == u_.spec()) || !(u_y_.spec() == u_.spec())) {
    throw Error(ErrorKind::InvalidInput, "u and its derivative grids differ");
  }
}

SurfaceData SurfaceData::normalized(Grid<double> u, Grid<double> u_x, Grid<double> u_y,
                                    double H) {
  return SurfaceData(std::move(u), std::move(u_x), std::move(u_y), H);
}

SurfaceData SurfaceData::normalized(Grid<double> u, double H) {
  Grid<double> u_x = difference(u, true);
  Grid<double> u_y = difference(u, false);
  return SurfaceData(std::move(u), std::move(u_x), std::move(u_y), H);
}

SurfaceData cylinder_data(const GridSpec& grid) {
  return SurfaceData::normalized(Grid<double>(grid), Grid<double>(grid), Grid<double>(grid),
                                 0.5);
}

double delaunay_energy(double u, double du, double H, double Q) {
  return 0.5 * du * du + 2.0 * Q * Q * std::exp(-2.0 * u) + 0.5 * H * H * std::exp(2.0 * u);
}

double DelaunayProfile::energy(std::size_t k) const {
  return delaunay_energy(u[k], du[k], H, Q);
}

DelaunayProfile delaunay_profile(double H, double x_lo, double x_hi, double u0, double du0,
                                 double step) {
  if (H == 0.0) throw Error(ErrorKind::InvalidInput, "delaunay_profile: H must be nonzero");
  if (!(step > 0.0)) throw Error(ErrorKind::InvalidInput, "delaunay_profile: step must be positive");
  if (!(x_hi >= x_lo)) throw Error(ErrorKind::InvalidInput, "delaunay_profile: empty interval");

  const auto steps = static_cast<std::size_t>(std::ceil((x_hi - x_lo) / step - 1e-9));
  DelaunayProfile p;
  p.H = H;
  p.Q = 0.5 * H;
  p.x_start = x_lo;
  p.step = steps == 0 ? step : (x_hi - x_lo) / static_cast<double>(steps);
  p.u.reserve(steps + 1);
  p.du.reserve(steps + 1);
  p.u.push_back(u0);
  p.du.push_back(du0);

  const double h = p.step;
  const double Q = p.Q;
  double u = u0, v = du0;
  for (std::size_t k = 0; k < steps; ++k) {
    const double k1u = v;
    const double k1v = gauss_rhs(u, H, Q);
    const double k2u = v + 0.5 * h * k1v;
    const double k2v = gauss_rhs(u + 0.5 * h * k1u, H, Q);
    const double k3u = v + 0.5 * h * k2v;
    const double k3v = gauss_rhs(u + 0.5 * h * k2u, H, Q);
    const double k4u = v + h * k3v;
    const double k4v = gauss_rhs(u + h * k3u, H, Q);
    u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    if (!std::isfinite(u) || !std::isfinite(v) || std::abs(u) > kBlowupBound) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "Gauss-equation profile left |u| <= " << kBlowupBound << " at x = " << p.x(k + 1);
      throw Error(ErrorKind::IntegrationBlowup, msg.str());
    }
    p.u.push_back(u);
    p.du.push_back(v);
  }
  return p;
}

SurfaceData delaunay_data(const GridSpec& grid, double H, double u0, double du0,
                          double max_step) {
  if (!(max_step > 0.0)) throw Error(ErrorKind::InvalidInput, "delaunay_data: max_step must be positive");
  const int substeps = std::max(1, static_cast<int>(std::ceil(grid.hx() / max_step - 1e-9)));
  const DelaunayProfile profile =
      delaunay_profile(H, grid.x_min(), grid.x_max(), u0, du0, grid.hx() / substeps);

  Grid<double> u(grid), u_x(grid), u_y(grid);
  for (int i = 0; i < grid.nx(); ++i) {
    const std::size_t k = static_cast<std::size_t>(i) * substeps;
    for (int j = 0; j < grid.ny(); ++j) {
      u(i, j) = profile.u[k];
      u_x(i, j) = profile.du[k];
    }
  }
  return SurfaceData::normalized(std::move(u), std::move(u_x), std::move(u_y), H);
}

Grid<double> gauss_residual(const SurfaceData& data) {
  const GridSpec& g = data.grid();
  const Grid<double>& u = data.u();
  const double Q = data.Q(), H = data.H();
  const double ihx2 = 1.0 / (g.hx() * g.hx());
  const double ihy2 = 1.0 / (g.hy() * g.hy());
  Grid<double> r(g, std::numeric_limits<double>::quiet_NaN());
  for (int j = 1; j < g.ny() - 1; ++j) {
    for (int i = 1; i < g.nx() - 1; ++i) {
      const double c = u(i, j);
      const double lap = (u(i + 1, j) - 2.0 * c + u(i - 1, j)) * ihx2 +
                         (u(i, j + 1) - 2.0 * c + u(i, j - 1)) * ihy2;
      r(i, j) = lap - 4.0 * Q * Q * std::exp(-2.0 * c) + H * H * std::exp(2.0 * c);
    }
  }
  return r;
}

SurfaceData dual_data(const SurfaceData& data) {
  Grid<double> u = data.u(), u_x = data.u_x(), u_y = data.u_y();
  for (double& v : u.values()) v = -v;
  for (double& v : u_x.values()) v = -v;
  for (double& v : u_y.values()) v = -v;
  return SurfaceData::normalized(std::move(u), std::move(u_x), std::move(u_y), data.H());
}

DerivativeSample derivative_samples(const SurfaceData& data, GridIndex p) {
  const GridSpec& g = data.grid();
  if (!g.interior(p)) {
    throw Error(ErrorKind::InvalidInput, "derivative_samples: (" + std::to_string(p.i) + ", " +
                                             std::to_string(p.j) + ") is not an interior point");
  }
  const Grid<double>& u = data.u();
  const double ux = (u(p.i + 1, p.j) - u(p.i - 1, p.j)) / (2.0 * g.hx());
  const double uy = (u(p.i, p.j + 1) - u(p.i, p.j - 1)) / (2.0 * g.hy());
  return {u[p], Complex(0.5 * ux, -0.5 * uy), Complex(0.5 * ux, 0.5 * uy)};
}

double max_abs_interior(const Grid<double>& values) {
  const GridSpec& g = values.spec();
  double m = 0.0;
  for (int j = 1; j < g.ny() - 1; ++j) {
    for (int i = 1; i < g.nx() - 1; ++i) {
      const double v = std::abs(values(i, j));
      if (!(v <= m)) m = v;  // propagates NaN
    }
  }
  return m;
}

SurfaceFile read_surface_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::NotFound, "cannot open surface file " + path.string());

  std::string line;
  std::size_t lineno = 0;
  auto next_data_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  };

  if (!next_data_line()) bad_file(path, lineno, "missing header line 'Q H nx ny'");
  double Q = 0.0, H = 0.0;
  long nx = 0, ny = 0;
  {
    std::istringstream hs(line);
    if (!(hs >> Q >> H >> nx >> ny)) bad_file(path, lineno, "header must read 'Q H nx ny'");
  }
  if (nx < GridSpec::kMinSamples || ny < GridSpec::kMinSamples) {
    bad_file(path, lineno, "nx and ny must be at least 5");
  }

  const std::size_t count = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
  std::vector<double> xs, ys, us, uxs, uys;
  xs.reserve(count);
  ys.reserve(count);
  us.reserve(count);
  int columns = 0;
  while (next_data_line()) {
    std::istringstream rs(line);
    std::vector<double> row;
    double v;
    while (rs >> v) row.push_back(v);
    if (!rs.eof()) bad_file(path, lineno, "non-numeric entry");
    if (row.size() != 3 && row.size() != 5) bad_file(path, lineno, "expected 3 or 5 columns");
    if (columns == 0) columns = static_cast<int>(row.size());
    if (static_cast<int>(row.size()) != columns) bad_file(path, lineno, "inconsistent column count");
    xs.push_back(row[0]);
    ys.push_back(row[1]);
    us.push_back(row[2]);
    if (columns == 5) {
      uxs.push_back(row[3]);
      uys.push_back(row[4]);
    }
  }
  if (xs.size() != count) {
    bad_file(path, lineno, "expected " + std::to_string(count) + " rows, found " +
                               std::to_string(xs.size()));
  }

  GridSpec grid = [&] {
    try {
      return GridSpec(xs.front(), xs.back(), ys.front(), ys.back(), static_cast<int>(nx),
                      static_cast<int>(ny));
    } catch (const Error& e) {
      bad_file(path, lineno, e.what());
    }
  }();
  const double tol = 1e-9 * (1.0 + std::max({std::abs(grid.x_min()), std::abs(grid.x_max()),
                                             std::abs(grid.y_min()), std::abs(grid.y_max())}));
  SurfaceFile file{grid, Grid<double>(grid), std::nullopt, std::nullopt, Q, H};
  if (columns == 5) {
    file.u_x.emplace(grid);
    file.u_y.emplace(grid);
  }
  std::size_t k = 0;
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i, ++k) {
      if (std::abs(xs[k] - grid.x(i)) > tol || std::abs(ys[k] - grid.y(j)) > tol) {
        bad_file(path, 0, "row " + std::to_string(k) + " is off the uniform grid (x fastest)");
      }
      file.u(i, j) = us[k];
      if (columns == 5) {
        (*file.u_x)(i, j) = uxs[k];
        (*file.u_y)(i, j) = uys[k];
      }
    }
  }
  return file;
}

void write_surface_file(const std::filesystem::path& path, const SurfaceData& data) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::NotFound, "cannot write surface file " + path.string());
  const GridSpec& g = data.grid();
  out.precision(17);
  out << "# Q H nx ny, then rows x y u u_x u_y with x fastest\n";
  out << data.Q() << ' ' << data.H() << ' ' << g.nx() << ' ' << g.ny() << '\n';
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      out << g.x(i) << ' ' << g.y(j) << ' ' << data.u()(i, j) << ' ' << data.u_x()(i, j) << ' '
          << data.u_y()(i, j) << '\n';
    }
  }
}

SurfaceData to_surface_data(const SurfaceFile& file) {
  if (!file.is_normalized()) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "surface data is not normalized: requires H = 2Q exactly (normalized isothermic "
           "coordinate), got H = "
        << file.H << ", Q = " << file.Q;
    throw Error(ErrorKind::Normalization, msg.str());
  }
  if (file.u_x && file.u_y) {
    return SurfaceData::normalized(file.u, *file.u_x, *file.u_y, file.H);
  }
  return SurfaceData::normalized(file.u, file.H);
}

}  // namespace cmclab
