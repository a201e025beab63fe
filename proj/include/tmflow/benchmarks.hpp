#pragma once

#include <string>
#include <vector>

#include "tmflow/scheme.hpp"

namespace tmflow {

// Natural-convection presets: buoyancy-driven flow in a box with heated and
// cooled walls, no external forcing, homogeneous velocity and angular data.
enum class BenchmarkName { Benard2D, Cavity2D, Cavity3D, Cavity3DHotStrip };

BenchmarkName benchmark_from_string(const std::string& s);
const char* benchmark_to_string(BenchmarkName name);

struct BenchmarkPreset {
  BenchmarkName name;
  Point lo, hi;
  std::array<int, 3> cells;   // resolution per axis
  int dim = 2;
  PhysicalParams params;
  SchemeConfig config;        // P2-P1 elements, preset tau / t_end
  ProblemDef problem;
};

// resolution: cells per unit length (1/h); tau/t_end/rayleigh <= 0 pick the
// preset defaults.
BenchmarkPreset load_preset(BenchmarkName name, double rayleigh = -1.0,
                            int resolution = 0, double tau = -1.0,
                            double t_end = -1.0);

// L2 norm of the pressure-gradient jump across interior edges within the
// layer of cells touching the boundary; measures the pressure boundary
// layer left by the splitting.
double boundary_pressure_jump(const Field& pressure);

// Range of a scalar field's coefficients.
std::pair<double, double> field_range(const Field& f);

}  // namespace tmflow
