#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "hwforms/benchmarks.hpp"
#include "hwforms/diagnostics.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Mixed finite-element solver for nonlinear hyperelasticity"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a benchmark case");
  std::string case_name;
  std::vector<int> refinements{1};
  int steps = 0;
  double tol = 1e-8;
  std::string out_dir = ".";
  std::vector<std::string> overrides;
  bool quiet = false;
  bool no_vtk = false;
  run->add_option("--case", case_name, "cook | cube | torsion | splitring")
      ->required();
  run->add_option("--refine", refinements, "refinement levels")
      ->delimiter(',');
  run->add_option("--steps", steps, "load increments (0 = case default)");
  run->add_option("--tol", tol, "relative residual tolerance");
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--law-override", overrides,
                  "material parameter override key=value");
  run->add_flag("--quiet", quiet, "suppress progress output");
  run->add_flag("--no-vtk", no_vtk, "skip VTK output");

  auto* verify = app.add_subcommand(
      "verify", "Run the derivative and basis self-check suites");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      const bool ok = hwforms::run_verification(std::cout);
      std::cout << (ok ? "all checks passed" : "CHECKS FAILED") << "\n";
      return ok ? 0 : 1;
    }

    hwforms::RunOptions options;
    options.refinements = refinements;
    options.steps = steps;
    options.tol_rel = tol;
    options.out_dir = out_dir;
    options.verbose = !quiet;
    options.write_vtk = !no_vtk;
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("expected key=value, got '" + kv + "'");
      options.law_overrides[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    }

    const hwforms::ConvergenceReport report =
        hwforms::run_case(case_name, options);
    std::cout << "case " << report.case_name << ", probe '"
              << report.probe_name << "'\n";
    for (const auto& row : report.rows)
      std::cout << "  refinement " << row.refinement << ": " << row.dofs
                << " unknowns, probe displacement (" << row.probe[0] << ", "
                << row.probe[1] << ", " << row.probe[2] << ")\n";
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
