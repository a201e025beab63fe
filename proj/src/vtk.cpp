#include "tmflow/vtk.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace tmflow {

namespace {

void put(std::ofstream& os, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  os << buf;
}

}  // namespace

void write_vtk(const std::string& path, const Field& velocity,
               const Field& pressure, const Field& angular,
               const Field& temperature) {
  const Mesh& mesh = velocity.space->mesh();
  const int dim = mesh.dim;
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");

  os << "# vtk DataFile Version 3.0\n";
  os << "tmflow fields\n";
  os << "ASCII\n";
  os << "DATASET UNSTRUCTURED_GRID\n";
  os << "POINTS " << mesh.n_vertices() << " double\n";
  for (const Point& p : mesh.vertices) {
    put(os, p[0]);
    os << ' ';
    put(os, p[1]);
    os << ' ';
    put(os, p[2]);
    os << '\n';
  }
  const int vpc = mesh.verts_per_cell();
  os << "CELLS " << mesh.n_cells() << ' ' << mesh.n_cells() * (vpc + 1) << '\n';
  for (const auto& c : mesh.cells) {
    os << vpc;
    for (int i = 0; i < vpc; ++i) os << ' ' << c[i];
    os << '\n';
  }
  os << "CELL_TYPES " << mesh.n_cells() << '\n';
  for (int i = 0; i < mesh.n_cells(); ++i) os << (dim == 2 ? 5 : 10) << '\n';

  os << "POINT_DATA " << mesh.n_vertices() << '\n';
  os << "VECTORS velocity double\n";
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    for (int a = 0; a < 3; ++a) {
      if (a) os << ' ';
      put(os, a < dim ? velocity.coeffs[velocity.space->dof(v, a)] : 0.0);
    }
    os << '\n';
  }
  os << "SCALARS pressure double 1\nLOOKUP_TABLE default\n";
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    put(os, pressure.coeffs[pressure.space->dof(v, 0)]);
    os << '\n';
  }
  os << "SCALARS temperature double 1\nLOOKUP_TABLE default\n";
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    put(os, temperature.coeffs[temperature.space->dof(v, 0)]);
    os << '\n';
  }
  if (dim == 2) {
    os << "SCALARS angular_velocity double 1\nLOOKUP_TABLE default\n";
    for (int v = 0; v < mesh.n_vertices(); ++v) {
      put(os, angular.coeffs[angular.space->dof(v, 0)]);
      os << '\n';
    }
  } else {
    os << "VECTORS angular_velocity double\n";
    for (int v = 0; v < mesh.n_vertices(); ++v) {
      for (int a = 0; a < 3; ++a) {
        if (a) os << ' ';
        put(os, angular.coeffs[angular.space->dof(v, a)]);
      }
      os << '\n';
    }
  }
  if (!os) throw std::runtime_error("write failure on " + path);
}

}  // namespace tmflow
