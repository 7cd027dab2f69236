#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"

#include "cmclab/error.hpp"
#include "cmclab/run.hpp"

using namespace cmclab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("cmclab_run_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

fs::path write_config(const fs::path& dir, const std::string& json) {
  const fs::path p = dir / "config.in.json";
  std::ofstream(p) << json;
  return p;
}

int cli(const std::string& args) {
  const std::string cmd = std::string(CMCLAB_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

const char* kSmallCylinder = R"({"family": "cylinder", "lambda": 0.5, "r": 0.1,
  "nx": 41, "ny": 41, "output_dir": "out",
  "tolerances": {"primary_mean_rel": 0.02, "shifted_mean_rel": 0.02}})";

}  // namespace

TEST_CASE("config validation") {
  CHECK_NOTHROW(parse_config("{}"));
  const RunConfig c = parse_config(R"({"family": "delaunay", "u0": 0.3, "lambda": 0.8})");
  CHECK(c.family == Family::Delaunay);
  CHECK(c.u0 == 0.3);
  auto kind_of = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InternalConsistency;
  };
  CHECK(kind_of(R"({"lambda": 1.2})") == ErrorKind::Configuration);
  CHECK(kind_of(R"({"lambda": 0.5, "r": 0.6})") == ErrorKind::Configuration);
  CHECK(kind_of(R"({"nx": 4})") == ErrorKind::Configuration);
  CHECK(kind_of(R"({"H": 0.7})") == ErrorKind::Configuration);
  CHECK(kind_of(R"({"family": "delaunay", "H": 0})") == ErrorKind::Configuration);
  CHECK(kind_of(R"({"colour": 1})") == ErrorKind::Configuration);
  CHECK(kind_of(R"({"family": "custom-file"})") == ErrorKind::Configuration);
  CHECK(kind_of(R"({"tolerances": {"bogus": 1}})") == ErrorKind::Configuration);
  CHECK(kind_of("not json") == ErrorKind::Configuration);
  CHECK(parse_config(config_to_json(c)).lambda == 0.8);
}

TEST_CASE("poincare ball projection") {
  const auto o = poincare_ball(H3Point::origin());
  CHECK(o == std::array<double, 3>{0.0, 0.0, 0.0});
  const double q = -0.3;
  const auto b = poincare_ball(H3Point(MinkowskiPoint{0, 0, -std::sinh(q), std::cosh(q)}));
  CHECK(b[2] == doctest::Approx(std::tanh(0.15)).epsilon(1e-14));
  for (int n = 0; n < 100; ++n) {
    const Mat2C g = testing::random_sl2c(8.0);
    const auto p = poincare_ball(H3Point(from_hermitian(congruence(g, Mat2C::identity()))));
    CHECK(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] < 1.0);
  }
}

TEST_CASE("frame file round trip is exact") {
  const GridSpec g(-1.0, 1.0, -0.5, 0.5, 41, 21);
  const ExtendedFrame f = integrate_frame(cylinder_data(g), SpectralParam(0.3, 0.1));
  const fs::path p = scratch("frame") / "frame.txt";
  write_frame(p, f);
  const ExtendedFrame back = read_frame(p);
  CHECK(back.grid() == g);
  CHECK(back.base == f.base);
  CHECK(back.F.values() == f.F.values());
}

TEST_CASE("cli: generate, verify, export, report") {
  const fs::path dir = scratch("cli");
  const fs::path cfg = write_config(dir, kSmallCylinder);
  const fs::path out = dir / "out";

  CHECK(cli("export --in " + out.string() + " --model poincare") == kExitConfiguration);
  CHECK(cli("generate --config " + cfg.string()) == kExitPass);
  for (const char* f : {files::kConfig, files::kSurfaceData, files::kFrame, files::kPrimaryMesh,
                        files::kShiftedMesh, files::kDiagnostics, files::kReportText,
                        files::kReportMachine}) {
    CHECK(fs::exists(out / f));
  }
  const std::string kv = slurp(out / files::kReportMachine);
  const std::string diag = slurp(out / files::kDiagnostics);
  CHECK(cli("verify --in " + out.string()) == kExitPass);
  CHECK(slurp(out / files::kReportMachine) == kv);
  CHECK(slurp(out / files::kDiagnostics) == diag);

  const std::string mesh = slurp(out / files::kPrimaryMesh);
  CHECK(cli("export --in " + out.string() + " --model poincare") == kExitPass);
  CHECK(slurp(out / files::kPrimaryMesh) == mesh);
  CHECK(cli("export --in " + out.string() + " --model klein") == kExitConfiguration);

  std::ostringstream machine;
  CHECK(command_report(out, true, machine) == kExitPass);
  std::istringstream lines(machine.str());
  std::string line;
  std::size_t count = 0;
  while (std::getline(lines, line)) {
    ++count;
    std::istringstream ls(line);
    std::string name, value, tol, status;
    CHECK(static_cast<bool>(ls >> name >> value >> tol >> status));
  }
  CHECK(count == check_registry().size());
  CHECK(cli("report --in " + out.string()) == kExitPass);
  CHECK(cli("report --in " + (dir / "nowhere").string()) == kExitConfiguration);
}

TEST_CASE("cli: exit codes") {
  const fs::path dir = scratch("codes");
  CHECK(cli("generate --config " + write_config(dir, R"({"lambda": 1.2})").string()) ==
        kExitConfiguration);
  CHECK(cli("generate --config " + (dir / "missing.json").string()) == kExitConfiguration);
  CHECK(cli("bogus") == kExitConfiguration);

  {
    std::ofstream f(dir / "wrong.txt");
    f << "0.3 0.5 5 5\n";
    for (int j = 0; j < 5; ++j)
      for (int i = 0; i < 5; ++i) f << i << ' ' << j << " 0\n";
  }
  CHECK(cli("generate --config " +
            write_config(dir, R"({"family": "custom-file", "data_file": "wrong.txt"})").string()) ==
        kExitConfiguration);

  CHECK(cli("generate --config " +
            write_config(dir, R"({"family": "delaunay", "u0": 40, "nx": 21, "ny": 21})").string()) ==
        kExitNumerical);
  CHECK(cli("generate --config " +
            write_config(dir, R"({"nx": 41, "ny": 41, "tolerances": {"primary_mean_rel": 1e-14}})")
                .string()) == kExitVerificationFailure);
}

TEST_CASE("custom-file family runs on a written delaunay surface") {
  const fs::path dir = scratch("custom");
  const GridSpec g(-1.0, 1.0, -1.0, 1.0, 61, 61);
  write_surface_file(dir / "delaunay.txt", delaunay_data(g, 0.5, 0.3, 0.0));
  RunConfig c = parse_config(R"({"family": "custom-file", "data_file": "x", "lambda": 0.5})");
  c.data_file = dir / "delaunay.txt";
  const RunResult r = run(c);
  CHECK(r.data.grid() == g);
  CHECK(r.report.check("frame_oracle_error").status == CheckStatus::Skip);
  CHECK(r.report.check("primary_mean_std").status == CheckStatus::Pass);
  CHECK(r.report.check("lawson_primary_vs_dual_homothety").status == CheckStatus::Pass);
}
