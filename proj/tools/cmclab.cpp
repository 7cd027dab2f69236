// Command-line front end: generate | verify | export | report.

#include <iostream>

#include "CLI11.hpp"
#include "cmclab/error.hpp"
#include "cmclab/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Constant mean curvature surfaces in hyperbolic 3-space from Euclidean CMC frames"};
  app.require_subcommand(1);

  std::string config_path;
  auto* generate = app.add_subcommand("generate", "build data, frame, surfaces, and run all checks");
  generate->add_option("--config", config_path, "run configuration (JSON)")->required();

  std::string in_dir;
  auto* verify = app.add_subcommand("verify", "re-run the checks on a generated run directory");
  verify->add_option("--in", in_dir, "run directory")->required();

  std::string model = "poincare";
  auto* exporter = app.add_subcommand("export", "re-project the stored surfaces to meshes");
  exporter->add_option("--in", in_dir, "run directory")->required();
  exporter->add_option("--model", model, "target model")->default_val("poincare");

  bool machine = false;
  auto* report = app.add_subcommand("report", "print a stored verification report");
  report->add_option("--in", in_dir, "run directory")->required();
  report->add_flag("--machine", machine, "one check per line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cmclab::kExitConfiguration;
  }

  try {
    if (*generate) return cmclab::command_generate(config_path);
    if (*verify) return cmclab::command_verify(in_dir);
    if (*exporter) return cmclab::command_export(in_dir, model);
    if (*report) return cmclab::command_report(in_dir, machine, std::cout);
  } catch (const cmclab::Error& e) {
    std::cerr << "error kind=" << cmclab::to_string(e.kind()) << " message=\"" << e.what()
              << "\"\n";
    return cmclab::exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error kind=internal message=\"" << e.what() << "\"\n";
    return cmclab::kExitNumerical;
  }
  return cmclab::kExitConfiguration;
}
