#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "tmflow/benchmarks.hpp"
#include "tmflow/convergence.hpp"
#include "tmflow/manifest.hpp"

namespace tmflow {

// Everything needed to run one transient problem.
struct RunSetup {
  Mesh mesh;
  PhysicalParams params;
  SchemeConfig config;
  ProblemDef problem;
  std::optional<ExactSolution> exact;
  std::optional<BenchmarkName> preset;
  int resolution = 0;
};

RunSetup setup_from_manifest(const RunManifest& m);

// Transient run with file outputs under m.out_dir; returns the result.
// Writes fields_<step>.vtk, energy_monitor.csv, run.log, and the midline
// profile curves for 2D presets.
TransientResult run_solve(const RunManifest& m, std::ostream& log);

// Manufactured-solution study over the resolutions in m.n; writes table.csv
// and the aligned text table to the log.
ConvergenceTable run_convergence(const RunManifest& m, std::ostream& log);

}  // namespace tmflow
