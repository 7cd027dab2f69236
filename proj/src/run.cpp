#include "cmclab/run.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "cmclab/error.hpp"
#include "json.hpp"

namespace cmclab {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& why) {
  throw Error(ErrorKind::Configuration, "config: " + why);
}

const char* family_name(Family f) {
  switch (f) {
    case Family::Cylinder: return "cylinder";
    case Family::Delaunay: return "delaunay";
    case Family::CustomFile: return "custom-file";
  }
  return "cylinder";
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::NotFound, "missing input file " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::NotFound, "cannot write " + path.string());
  out << text;
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

SurfaceData build_data(const RunConfig& c) {
  switch (c.family) {
    case Family::Cylinder: return cylinder_data(config_grid(c));
    case Family::Delaunay: return delaunay_data(config_grid(c), c.H, c.u0, c.du0, c.ode_step);
    case Family::CustomFile: return to_surface_data(read_surface_file(c.data_file));
  }
  config_error("unknown family");
}

IntegrationOptions integration_options(const Tolerances& tol, PathOrder order) {
  IntegrationOptions o;
  o.order = order;
  o.compatibility_tolerance = tol.at("gauss_residual_max");
  o.det_tolerance = tol.at("frame_det_drift");
  return o;
}

void require_file(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorKind::NotFound, "missing input file " + path.string());
  }
}

void write_reports(const std::filesystem::path& dir, const VerificationReport& report) {
  write_text(dir / files::kReportText, report.to_text() + "generated: " + timestamp() + "\n");
  write_text(dir / files::kReportMachine, report.to_machine());
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    config_error(std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) config_error("top level must be an object");

  RunConfig c;
  for (const auto& [key, value] : j.items()) {
    auto number = [&]() -> double {
      if (!value.is_number()) config_error("'" + key + "' must be a number");
      return value.get<double>();
    };
    auto integer = [&]() -> int {
      if (!value.is_number_integer()) config_error("'" + key + "' must be an integer");
      return value.get<int>();
    };
    auto text = [&]() -> std::string {
      if (!value.is_string()) config_error("'" + key + "' must be a string");
      return value.get<std::string>();
    };
    if (key == "family") {
      const std::string f = text();
      if (f == "cylinder") {
        c.family = Family::Cylinder;
      } else if (f == "delaunay") {
        c.family = Family::Delaunay;
      } else if (f == "custom-file") {
        c.family = Family::CustomFile;
      } else {
        config_error("family must be cylinder, delaunay or custom-file, got '" + f + "'");
      }
    } else if (key == "H") {
      c.H = number();
    } else if (key == "u0") {
      c.u0 = number();
    } else if (key == "du0") {
      c.du0 = number();
    } else if (key == "ode_step") {
      c.ode_step = number();
    } else if (key == "data_file") {
      c.data_file = text();
    } else if (key == "lambda") {
      c.lambda = number();
    } else if (key == "r") {
      c.r = number();
    } else if (key == "x_min") {
      c.x_min = number();
    } else if (key == "x_max") {
      c.x_max = number();
    } else if (key == "y_min") {
      c.y_min = number();
    } else if (key == "y_max") {
      c.y_max = number();
    } else if (key == "nx") {
      c.nx = integer();
    } else if (key == "ny") {
      c.ny = integer();
    } else if (key == "output_dir") {
      c.output_dir = text();
    } else if (key == "tolerances") {
      if (!value.is_object()) config_error("'tolerances' must be an object");
      for (const auto& [name, t] : value.items()) {
        if (!t.is_number()) config_error("tolerance '" + name + "' must be a number");
        c.tolerances[name] = t.get<double>();
      }
    } else {
      config_error("unknown key '" + key + "'");
    }
  }

  if (!(c.r > 0.0 && c.r < c.lambda && c.lambda < 1.0)) {
    std::ostringstream msg;
    msg << "spectral parameters must satisfy 0 < r < lambda < 1 (got r = " << c.r
        << ", lambda = " << c.lambda << ")";
    config_error(msg.str());
  }
  if (c.H == 0.0 || !std::isfinite(c.H)) config_error("H must be finite and nonzero");
  if (c.family == Family::Cylinder && c.H != 0.5) {
    config_error("the cylinder family has H = 0.5 (Q = 0.25)");
  }
  if (!(c.ode_step > 0.0)) config_error("ode_step must be positive");
  if (c.family == Family::CustomFile) {
    if (c.data_file.empty()) config_error("custom-file family needs 'data_file'");
  } else {
    try {
      config_grid(c);
    } catch (const Error& e) {
      config_error(e.what());
    }
  }
  merge_tolerances(c.tolerances);
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  RunConfig c = parse_config(read_text(path));
  const std::filesystem::path base = std::filesystem::absolute(path).parent_path();
  if (!c.data_file.empty() && c.data_file.is_relative()) c.data_file = base / c.data_file;
  if (c.output_dir.is_relative()) c.output_dir = base / c.output_dir;
  return c;
}

std::string config_to_json(const RunConfig& c) {
  json j = {
      {"family", family_name(c.family)},
      {"H", c.H},
      {"u0", c.u0},
      {"du0", c.du0},
      {"ode_step", c.ode_step},
      {"lambda", c.lambda},
      {"r", c.r},
      {"x_min", c.x_min},
      {"x_max", c.x_max},
      {"y_min", c.y_min},
      {"y_max", c.y_max},
      {"nx", c.nx},
      {"ny", c.ny},
      {"output_dir", c.output_dir.string()},
      {"tolerances", json::object()},
  };
  if (!c.data_file.empty()) j["data_file"] = c.data_file.string();
  for (const auto& [name, t] : c.tolerances) j["tolerances"][name] = t;
  return j.dump(2) + "\n";
}

GridSpec config_grid(const RunConfig& c) {
  return GridSpec(c.x_min, c.x_max, c.y_min, c.y_max, c.nx, c.ny);
}

std::array<double, 3> poincare_ball(const H3Point& p) {
  const double k = 1.0 / (1.0 + p.x0());
  return {p.x1() * k, p.x2() * k, p.x3() * k};
}

RunResult run(const RunConfig& config) {
  const Tolerances tol = merge_tolerances(config.tolerances);
  SurfaceData data = build_data(config);
  ExtendedFrame frame = integrate_frame(data, SpectralParam(config.lambda, config.r),
                                        integration_options(tol, PathOrder::RowsThenColumns));
  return analyze(config, std::move(data), std::move(frame));
}

RunResult analyze(const RunConfig& config, SurfaceData data, ExtendedFrame frame) {
  const Tolerances tol = merge_tolerances(config.tolerances);
  if (!(frame.grid() == data.grid())) {
    throw Error(ErrorKind::Configuration, "frame and surface data grids differ");
  }
  const SpectralParam& lambda = frame.lambda;

  TheoremEvidence ev;
  Grid<double> residual = gauss_residual(data);
  ev.gauss_residual_max = max_abs_interior(residual);
  ev.det_drift = det_drift(frame).value;
  const ExtendedFrame other =
      integrate_frame(data, lambda, integration_options(tol, PathOrder::ColumnsThenRows));
  ev.two_path = max_frame_difference(frame, other);
  if (config.family == Family::Cylinder) ev.oracle_error = cylinder_oracle_error(frame);

  const ExtendedFrame shifted_frame = shift_frame(frame);
  H3SurfaceGrid primary = surface_primary(frame);
  H3SurfaceGrid shifted = surface_primary(shifted_frame);
  const NormalField n_primary = normal_field(frame);
  const NormalField n_shifted = normal_field(shifted_frame);

  ev.parallel = parallel_identity_residual(frame);
  Grid<double> distances = surface_distances(primary, shifted);
  for (double d : distances.values()) {
    ev.equidistance_max_deviation = std::max(ev.equidistance_max_deviation, std::abs(d + lambda.q()));
  }
  ev.normal_primary = normal_defects(n_primary, primary);
  ev.normal_shifted = normal_defects(n_shifted, shifted);
  ev.normal_crosscheck_primary = normal_agreement(reconstruct_normal(primary), n_primary);
  ev.normal_crosscheck_shifted = normal_agreement(reconstruct_normal(shifted), n_shifted);

  MeasuredData m_primary = measure(primary, n_primary);
  MeasuredData m_shifted = measure(shifted, n_shifted);
  VerificationReport report = verify_theorem(data, lambda, m_primary, m_shifted, ev, tol);
  report.metadata.insert(report.metadata.begin(), {"family", family_name(config.family)});

  return RunResult{std::move(data),      std::move(frame),     std::move(primary),
                   std::move(shifted),   std::move(m_primary), std::move(m_shifted),
                   std::move(residual),  std::move(distances), std::move(report)};
}

void write_mesh(const std::filesystem::path& path, const H3SurfaceGrid& surface) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::NotFound, "cannot write mesh " + path.string());
  const GridSpec& g = surface.grid();
  out.precision(17);
  out << "# " << (surface.kind == SurfaceKind::Primary ? "F F^*" : "F D (F D)^*")
      << " in the Poincare ball, " << g.nx() << "x" << g.ny() << " quad grid\n";
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const auto b = poincare_ball(surface.at(i, j));
      out << "v " << b[0] << ' ' << b[1] << ' ' << b[2] << '\n';
    }
  }
  auto vid = [&](int i, int j) { return static_cast<long>(j) * g.nx() + i + 1; };
  for (int j = 0; j + 1 < g.ny(); ++j) {
    for (int i = 0; i + 1 < g.nx(); ++i) {
      out << "f " << vid(i, j) << ' ' << vid(i + 1, j) << ' ' << vid(i + 1, j + 1) << ' '
          << vid(i, j + 1) << '\n';
    }
  }
}

void write_diagnostics(const std::filesystem::path& path, const RunResult& r) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::NotFound, "cannot write diagnostics " + path.string());
  const GridSpec& g = r.data.grid();
  const MeasuredData& m = r.measured_primary;
  out.precision(17);
  out << "# i j x y E Fc G |Qm| Hm distance-to-shifted gauss-residual\n";
  for (int j = 1; j < g.ny() - 1; ++j) {
    for (int i = 1; i < g.nx() - 1; ++i) {
      out << i << ' ' << j << ' ' << g.x(i) << ' ' << g.y(j) << ' ' << m.E(i, j) << ' '
          << m.Fc(i, j) << ' ' << m.G(i, j) << ' ' << std::abs(m.Qm(i, j)) << ' ' << m.Hm(i, j)
          << ' ' << r.distances(i, j) << ' ' << r.residual(i, j) << '\n';
    }
  }
}

void write_frame(const std::filesystem::path& path, const ExtendedFrame& frame) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::NotFound, "cannot write frame " + path.string());
  const GridSpec& g = frame.grid();
  out.precision(17);
  out << "# lambda r nx ny base_i base_j x_min x_max y_min y_max shifted\n";
  out << frame.lambda.lambda() << ' ' << frame.lambda.r() << ' ' << g.nx() << ' ' << g.ny() << ' '
      << frame.base.i << ' ' << frame.base.j << ' ' << g.x_min() << ' ' << g.x_max() << ' '
      << g.y_min() << ' ' << g.y_max() << ' ' << (frame.shifted ? 1 : 0) << '\n';
  out << "# i j Re a Im a Re b Im b Re c Im c Re d Im d\n";
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const Mat2C& f = frame.F(i, j);
      out << i << ' ' << j;
      for (Complex v : {f.a, f.b, f.c, f.d}) out << ' ' << v.real() << ' ' << v.imag();
      out << '\n';
    }
  }
}

ExtendedFrame read_frame(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::NotFound, "missing frame file " + path.string());
  auto bad = [&](const std::string& why) -> Error {
    return Error(ErrorKind::Configuration, path.string() + ": " + why);
  };
  std::string line;
  auto next = [&]() {
    while (std::getline(in, line)) {
      if (!line.empty() && line[0] != '#') return true;
    }
    return false;
  };
  if (!next()) throw bad("missing header");
  double lambda, r, x_min, x_max, y_min, y_max;
  int nx, ny, bi, bj, shifted;
  {
    std::istringstream hs(line);
    if (!(hs >> lambda >> r >> nx >> ny >> bi >> bj >> x_min >> x_max >> y_min >> y_max >> shifted)) {
      throw bad("malformed header");
    }
  }
  const GridSpec g(x_min, x_max, y_min, y_max, nx, ny);
  ExtendedFrame frame{Grid<Mat2C>(g), SpectralParam(lambda, r), {bi, bj}, shifted != 0};
  if (!g.contains(frame.base)) throw bad("base point outside the grid");
  std::size_t rows = 0;
  while (next()) {
    std::istringstream ls(line);
    int i, j;
    double v[8];
    if (!(ls >> i >> j >> v[0] >> v[1] >> v[2] >> v[3] >> v[4] >> v[5] >> v[6] >> v[7])) {
      throw bad("malformed row: " + line);
    }
    if (!g.contains({i, j})) throw bad("row index outside the grid");
    frame.F(i, j) = {Complex(v[0], v[1]), Complex(v[2], v[3]), Complex(v[4], v[5]),
                     Complex(v[6], v[7])};
    ++rows;
  }
  if (rows != g.size()) throw bad("expected " + std::to_string(g.size()) + " rows");
  return frame;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput:
    case ErrorKind::Configuration:
    case ErrorKind::NotFound:
    case ErrorKind::Normalization:
      return kExitConfiguration;
    case ErrorKind::IncompatibleData:
    case ErrorKind::IntegrationBlowup:
    case ErrorKind::IntegrationFailure:
    case ErrorKind::InternalConsistency:
      return kExitNumerical;
  }
  return kExitNumerical;
}

int command_generate(const std::filesystem::path& config_path) {
  const RunConfig config = load_config(config_path);
  const RunResult r = run(config);
  const std::filesystem::path& dir = config.output_dir;
  std::filesystem::create_directories(dir);
  write_text(dir / files::kConfig, config_to_json(config));
  write_surface_file(dir / files::kSurfaceData, r.data);
  write_frame(dir / files::kFrame, r.frame);
  write_mesh(dir / files::kPrimaryMesh, r.primary);
  write_mesh(dir / files::kShiftedMesh, r.shifted);
  write_diagnostics(dir / files::kDiagnostics, r);
  write_reports(dir, r.report);
  return r.report.passed() ? kExitPass : kExitVerificationFailure;
}

namespace {

struct StoredRun {
  RunConfig config;
  SurfaceData data;
  ExtendedFrame frame;
};

StoredRun load_run(const std::filesystem::path& dir) {
  require_file(dir / files::kConfig);
  require_file(dir / files::kSurfaceData);
  require_file(dir / files::kFrame);
  RunConfig config = load_config(dir / files::kConfig);
  SurfaceData data = to_surface_data(read_surface_file(dir / files::kSurfaceData));
  ExtendedFrame frame = read_frame(dir / files::kFrame);
  if (frame.lambda.lambda() != config.lambda || frame.lambda.r() != config.r) {
    throw Error(ErrorKind::Configuration, "stored frame was integrated at a different lambda");
  }
  return {std::move(config), std::move(data), std::move(frame)};
}

}  // namespace

int command_verify(const std::filesystem::path& dir) {
  StoredRun s = load_run(dir);
  const RunResult r = analyze(s.config, std::move(s.data), std::move(s.frame));
  write_diagnostics(dir / files::kDiagnostics, r);
  write_reports(dir, r.report);
  return r.report.passed() ? kExitPass : kExitVerificationFailure;
}

int command_export(const std::filesystem::path& dir, const std::string& model) {
  if (model != "poincare") {
    throw Error(ErrorKind::Configuration, "unsupported export model '" + model + "' (use poincare)");
  }
  require_file(dir / files::kFrame);
  const ExtendedFrame frame = read_frame(dir / files::kFrame);
  write_mesh(dir / files::kPrimaryMesh, surface_primary(frame));
  write_mesh(dir / files::kShiftedMesh, surface_shifted(frame));
  return kExitPass;
}

int command_report(const std::filesystem::path& dir, bool machine, std::ostream& out) {
  const std::filesystem::path kv = dir / files::kReportMachine;
  require_file(kv);
  const VerificationReport report = VerificationReport::from_machine(read_text(kv));
  if (machine) {
    for (const CheckRecord& c : report.checks) {
      out << std::setprecision(17) << c.name << ' ' << c.value << ' ' << c.tolerance << ' '
          << to_string(c.status) << '\n';
    }
  } else {
    require_file(dir / files::kReportText);
    out << read_text(dir / files::kReportText);
  }
  return report.passed() ? kExitPass : kExitVerificationFailure;
}

}  // namespace cmclab
