#pragma once

#include <array>
#include <filesystem>
#include <string>

#include "cmclab/error.hpp"
#include "cmclab/verify.hpp"

namespace cmclab {

enum class Family { Cylinder, Delaunay, CustomFile };

/// Flat JSON object; see README for the keys.
struct RunConfig {
  Family family = Family::Cylinder;
  double H = 0.5;
  double u0 = 0.0;
  double du0 = 0.0;
  double ode_step = 1e-3;
  std::filesystem::path data_file;  ///< custom-file only
  double lambda = 0.5;
  double r = 0.1;
  double x_min = -1.0, x_max = 1.0, y_min = -1.0, y_max = 1.0;
  int nx = 101, ny = 101;
  std::filesystem::path output_dir = "out";
  Tolerances tolerances;  ///< overrides only
};

/// Parses and validates. Throws Configuration (NotFound for a missing file).
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const RunConfig& config);
GridSpec config_grid(const RunConfig& config);

/// (x1, x2, x3) / (1 + x0).
std::array<double, 3> poincare_ball(const H3Point& p);

/// Every intermediate product of one run.
struct RunResult {
  SurfaceData data;
  ExtendedFrame frame;
  H3SurfaceGrid primary, shifted;
  MeasuredData measured_primary, measured_shifted;
  Grid<double> residual;
  Grid<double> distances;
  VerificationReport report;
};

/// generate-data -> integrate-frame -> build-surfaces -> measure -> verify.
RunResult run(const RunConfig& config);

/// Same analysis for given data and an already integrated frame.
RunResult analyze(const RunConfig& config, SurfaceData data, ExtendedFrame frame);

/// Quad mesh of Poincare-ball vertices in Wavefront text form.
void write_mesh(const std::filesystem::path& path, const H3SurfaceGrid& surface);

/// Interior rows: i j x y E Fc G |Qm| Hm distance gauss_residual.
void write_diagnostics(const std::filesystem::path& path, const RunResult& result);

void write_frame(const std::filesystem::path& path, const ExtendedFrame& frame);
/// Throws NotFound or Configuration.
ExtendedFrame read_frame(const std::filesystem::path& path);

/// Output file names inside the run directory.
namespace files {
inline constexpr const char* kConfig = "config.json";
inline constexpr const char* kSurfaceData = "surface_data.txt";
inline constexpr const char* kFrame = "frame.txt";
inline constexpr const char* kPrimaryMesh = "primary.obj";
inline constexpr const char* kShiftedMesh = "shifted.obj";
inline constexpr const char* kDiagnostics = "diagnostics.txt";
inline constexpr const char* kReportText = "report.txt";
inline constexpr const char* kReportMachine = "report.kv";
}  // namespace files

/// CLI exit codes.
enum ExitCode : int {
  kExitPass = 0,
  kExitVerificationFailure = 1,
  kExitConfiguration = 2,
  kExitNumerical = 3,
};

int exit_code(ErrorKind kind);

/// Subcommands. Each writes into / reads from a run directory and returns
/// an exit code; library errors propagate as exceptions.
int command_generate(const std::filesystem::path& config_path);
int command_verify(const std::filesystem::path& dir);
int command_export(const std::filesystem::path& dir, const std::string& model);
int command_report(const std::filesystem::path& dir, bool machine, std::ostream& out);

}  // namespace cmclab
