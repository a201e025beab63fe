#include "tmflow/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace tmflow {

BenchmarkName benchmark_from_string(const std::string& s) {
  if (s == "benard2d") return BenchmarkName::Benard2D;
  if (s == "cavity2d") return BenchmarkName::Cavity2D;
  if (s == "cavity3d") return BenchmarkName::Cavity3D;
  if (s == "cavity3d_hotstrip") return BenchmarkName::Cavity3DHotStrip;
  throw std::invalid_argument("unknown benchmark preset: " + s);
}

const char* benchmark_to_string(BenchmarkName name) {
  switch (name) {
    case BenchmarkName::Benard2D:
      return "benard2d";
    case BenchmarkName::Cavity2D:
      return "cavity2d";
    case BenchmarkName::Cavity3D:
      return "cavity3d";
    case BenchmarkName::Cavity3DHotStrip:
      return "cavity3d_hotstrip";
  }
  return "?";
}

BenchmarkPreset load_preset(BenchmarkName name, double rayleigh, int resolution,
                            double tau, double t_end) {
  BenchmarkPreset p;
  p.name = name;
  p.params = PhysicalParams{};  // all coefficients 1
  p.config.elements = ElementPair::P2_P1;
  p.config.scheme = SchemeKind::RPC1;

  switch (name) {
    case BenchmarkName::Benard2D: {
      p.dim = 2;
      p.lo = {0.0, 0.0, 0.0};
      p.hi = {5.0, 1.0, 0.0};
      const int n = resolution > 0 ? resolution : 20;
      p.cells = {5 * n, n, 1};
      const double h = 1.0 / n;
      p.config.tau = tau > 0.0 ? tau : h * h;
      p.config.t_end = t_end > 0.0 ? t_end : 1.0;
      p.params.e_hat = rayleigh > 0.0 ? rayleigh : 1e4;
      // heated floor, cooled ceiling, insulated sides
      p.problem.T_bc.dirichlet[kBottom] = true;
      p.problem.T_bc.value[kBottom] = [](const Point&, double) { return 1.0; };
      p.problem.T_bc.dirichlet[kTop] = true;
      p.problem.T_bc.value[kTop] = [](const Point&, double) { return 0.0; };
      p.problem.T0 = [](const Point& x, double) { return 1.0 - x[1]; };
      break;
    }
    case BenchmarkName::Cavity2D: {
      p.dim = 2;
      p.lo = {0.0, 0.0, 0.0};
      p.hi = {1.0, 1.0, 0.0};
      const int n = resolution > 0 ? resolution : 30;
      p.cells = {n, n, 1};
      const double h = 1.0 / n;
      p.config.tau = tau > 0.0 ? tau : h * h;
      p.config.t_end = t_end > 0.0 ? t_end : 1.0;
      p.params.e_hat = rayleigh > 0.0 ? rayleigh : 1e4;
      // hot left wall, cold right wall, insulated floor and ceiling
      p.problem.T_bc.dirichlet[kLeft] = true;
      p.problem.T_bc.value[kLeft] = [](const Point&, double) { return 1.0; };
      p.problem.T_bc.dirichlet[kRight] = true;
      p.problem.T_bc.value[kRight] = [](const Point&, double) { return 0.0; };
      p.problem.T0 = [](const Point& x, double) { return 1.0 - x[0]; };
      break;
    }
    case BenchmarkName::Cavity3D: {
      p.dim = 3;
      p.lo = {0.0, 0.0, 0.0};
      p.hi = {1.0, 1.0, 1.0};
      const int n = resolution > 0 ? resolution : 15;
      p.cells = {n, n, n};
      p.config.tau = tau > 0.0 ? tau : 0.01;
      p.config.t_end = t_end > 0.0 ? t_end : 1.0;
      p.params.e_hat = rayleigh > 0.0 ? rayleigh : 1e4;
      p.problem.T_bc.dirichlet[kLeft] = true;
      p.problem.T_bc.value[kLeft] = [](const Point&, double) { return 1.0; };
      p.problem.T_bc.dirichlet[kRight] = true;
      p.problem.T_bc.value[kRight] = [](const Point&, double) { return 0.0; };
      p.problem.T0 = [](const Point& x, double) { return 1.0 - x[0]; };
      break;
    }
    case BenchmarkName::Cavity3DHotStrip: {
      p.dim = 3;
      p.lo = {0.0, 0.0, 0.0};
      p.hi = {1.0, 1.0, 1.0};
      const int n = resolution > 0 ? resolution : 15;
      p.cells = {n, n, n};
      const double h = 1.0 / n;
      p.config.tau = tau > 0.0 ? tau : h * h;
      p.config.t_end = t_end > 0.0 ? t_end : 1.0;
      p.params.e_hat = rayleigh > 0.0 ? rayleigh : 10.0;
      // parabolic hot strip on the floor; x=1, y=0, y=1 insulated; the
      // remaining walls are held at zero.
      p.problem.T_bc.dirichlet[kBottom] = true;
      p.problem.T_bc.value[kBottom] = [](const Point& x, double) {
        return 4.0 * x[0] * (1.0 - x[0]);
      };
      p.problem.T_bc.dirichlet[kLeft] = true;
      p.problem.T_bc.value[kLeft] = [](const Point&, double) { return 0.0; };
      p.problem.T_bc.dirichlet[kTop] = true;
      p.problem.T_bc.value[kTop] = [](const Point&, double) { return 0.0; };
      p.problem.T0 = [](const Point& x, double) {
        return x[2] < 1e-12 ? 4.0 * x[0] * (1.0 - x[0]) : 0.0;
      };
      break;
    }
  }
  return p;
}

double boundary_pressure_jump(const Field& pressure) {
  const FunctionSpace& sp = *pressure.space;
  const Mesh& mesh = sp.mesh();
  const int dim = mesh.dim;

  // Cells touching the boundary through a facet.
  std::set<int> layer;
  for (const auto& f : mesh.boundary_facets) layer.insert(f.cell);

  // Constant pressure gradient per cell.
  std::vector<std::array<double, 3>> grad(mesh.n_cells(), {0.0, 0.0, 0.0});
  double grads[10][3];
  const auto& elem = sp.element();
  std::array<double, 4> center{};
  for (int i = 0; i <= dim; ++i) center[i] = 1.0 / (dim + 1);
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const CellGeometry geom = CellGeometry::make(mesh, c);
    eval_grad_basis(elem, center.data(), geom, grads);
    for (int k = 0; k < elem.n_basis(); ++k) {
      const double coef = pressure.coeffs[sp.cell_node(c, k)];
      for (int a = 0; a < dim; ++a) grad[c][a] += coef * grads[k][a];
    }
  }

  double total = 0.0;
  for (const auto& rec : collect_facets(mesh)) {
    if (rec.uses.size() != 2) continue;
    const int c0 = rec.uses[0].cell, c1 = rec.uses[1].cell;
    if (!layer.count(c0) && !layer.count(c1)) continue;
    // facet measure
    const auto& fv = rec.uses[0].ordered;
    double measure = 0.0;
    if (dim == 2) {
      const Point& a = mesh.vertices[fv[0]];
      const Point& b = mesh.vertices[fv[1]];
      measure = std::hypot(b[0] - a[0], b[1] - a[1]);
    } else {
      const Point& a = mesh.vertices[fv[0]];
      const Point& b = mesh.vertices[fv[1]];
      const Point& c = mesh.vertices[fv[2]];
      const double ux = b[0] - a[0], uy = b[1] - a[1], uz = b[2] - a[2];
      const double vx = c[0] - a[0], vy = c[1] - a[1], vz = c[2] - a[2];
      const double nx = uy * vz - uz * vy, ny = uz * vx - ux * vz,
                   nz = ux * vy - uy * vx;
      measure = 0.5 * std::sqrt(nx * nx + ny * ny + nz * nz);
    }
    double jump2 = 0.0;
    for (int a = 0; a < dim; ++a) {
      const double d = grad[c0][a] - grad[c1][a];
      jump2 += d * d;
    }
    total += measure * jump2;
  }
  return std::sqrt(total);
}

std::pair<double, double> field_range(const Field& f) {
  double lo = f.coeffs.empty() ? 0.0 : f.coeffs[0];
  double hi = lo;
  for (double v : f.coeffs) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

}  // namespace tmflow
