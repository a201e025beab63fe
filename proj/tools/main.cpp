// Command line front end: transient runs, convergence studies, benchmark
// presets and the invariant self-test suite.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "tmflow/run.hpp"
#include "tmflow/selfcheck.hpp"

using namespace tmflow;

namespace {

int cmd_solve(const std::string& manifest_path) {
  RunManifest m = load_manifest_file(manifest_path);
  run_solve(m, std::cout);
  return 0;
}

int cmd_convergence(const std::string& manifest_path) {
  RunManifest m = load_manifest_file(manifest_path);
  ConvergenceTable table = run_convergence(m, std::cout);
  std::cout << "table written to " << m.out_dir << "/table.csv\n";
  return 0;
}

int cmd_benchmark(const std::string& name, double rayleigh,
                  const std::string& scheme, double h, double tau, double tend,
                  const std::string& outdir, int every) {
  benchmark_from_string(name);  // validate early
  RunManifest m;
  m.preset = name;
  m.scheme = scheme;
  if (rayleigh > 0.0) {
    m.physics.e_hat = rayleigh;
    m.physics_set = true;
    m.rayleigh_override = rayleigh;
  }
  if (h > 0.0) m.n.push_back(static_cast<int>(std::lround(1.0 / h)));
  if (tau > 0.0) m.tau = tau;
  if (tend > 0.0) m.tend = tend;
  m.out_dir = outdir;
  m.every = every;
  run_solve(m, std::cout);
  return 0;
}

int cmd_check() {
  const auto results = run_self_checks();
  bool all = true;
  for (const auto& r : results) {
    std::printf("%-42s %s  %s\n", r.name.c_str(), r.pass ? "PASS" : "FAIL",
                r.detail.c_str());
    all = all && r.pass;
  }
  return all ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"thermomicropolar flow solver (pressure-correction projection FEM)"};
  app.set_help_flag("--help", "print usage");
  app.require_subcommand(1);

  std::string manifest_path;
  auto* solve = app.add_subcommand("solve", "transient run from a manifest");
  solve->add_option("manifest", manifest_path, "manifest file")->required();

  std::string conv_path;
  auto* conv = app.add_subcommand("convergence", "manufactured-solution study");
  conv->add_option("manifest", conv_path, "manifest file")->required();

  std::string bname, bscheme = "rpc1", boutdir = "out";
  double bray = -1.0, bh = -1.0, btau = -1.0, btend = -1.0;
  int bevery = 0;
  auto* bench = app.add_subcommand("benchmark", "run a convection preset");
  bench->add_option("name", bname, "benard2d|cavity2d|cavity3d|cavity3d_hotstrip")
      ->required();
  bench->add_option("--rayleigh", bray, "buoyancy strength");
  bench->add_option("--scheme", bscheme, "spc1|rpc1|rpc2");
  bench->add_option("--h", bh, "mesh size (1/cells per unit length)");
  bench->add_option("--tau", btau, "time step");
  bench->add_option("--tend", btend, "end time");
  bench->add_option("--outdir", boutdir, "output directory");
  bench->add_option("--every", bevery, "vtk output cadence in steps");

  auto* check = app.add_subcommand("check", "run the invariant self-test suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (solve->parsed()) return cmd_solve(manifest_path);
    if (conv->parsed()) return cmd_convergence(conv_path);
    if (bench->parsed())
      return cmd_benchmark(bname, bray, bscheme, bh, btau, btend, boutdir, bevery);
    if (check->parsed()) return cmd_check();
  } catch (const ManifestError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const StepFailure& e) {
    std::cerr << "numerical failure at step " << e.step << ": " << e.what()
              << " (iterations " << e.report.iterations << ", residual "
              << e.report.rel_residual << ")\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
