#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace tmflow {

using Point = std::array<double, 3>;  // third coordinate unused in 2D

// Box face tags. The enum order is also the override priority used when a
// corner or edge node belongs to several Dirichlet faces: later tags win.
// In 2D bottom/top are the y faces; in 3D bottom/top are the z faces
// (the buoyancy direction) and front/back the y faces.
enum BoundaryTag : int {
  kLeft = 0,
  kRight = 1,
  kBottom = 2,
  kTop = 3,
  kFront = 4,
  kBack = 5,
};

int tag_axis(int tag, int dim);    // coordinate axis the face constrains
bool tag_is_upper(int tag);        // max side of the box

struct BoundaryFacet {
  std::array<int, 3> v{-1, -1, -1};  // 2 vertices in 2D, 3 in 3D, oriented outward
  int cell = -1;
  int tag = -1;
};

// Uniform simplicial triangulation of an axis-aligned box. 2D squares are
// split along the lower-left to upper-right diagonal; 3D cubes use the
// six-tetrahedra Kuhn subdivision so neighbouring cube faces agree.
struct Mesh {
  int dim = 2;
  std::vector<Point> vertices;
  std::vector<std::array<int, 4>> cells;  // cells[i][3] == -1 for triangles
  std::vector<BoundaryFacet> boundary_facets;
  double h = 0.0;  // max cell diameter

  Point lo{0.0, 0.0, 0.0};
  Point hi{1.0, 1.0, 1.0};
  std::array<int, 3> n_axis{1, 1, 1};

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_cells() const { return static_cast<int>(cells.size()); }
  int verts_per_cell() const { return dim + 1; }

  double cell_volume(int c) const;
  double domain_volume() const;

  // Locates the cell containing x (structured lookup). Fills the barycentric
  // coordinates of x in that cell. Returns -1 if x is outside the box.
  int locate(const Point& x, std::array<double, 4>& bary) const;
};

Mesh build_structured_mesh(const Point& lo, const Point& hi,
                           const std::array<int, 3>& n, int dim);

// Barycentric coordinates of x with respect to a cell.
std::array<double, 4> barycentric(const Mesh& mesh, int cell, const Point& x);

// Facet connectivity, used by tests to check interior facet orientation.
struct FacetUse {
  std::array<int, 3> ordered{-1, -1, -1};  // outward-oriented vertex tuple
  int cell = -1;
};
struct FacetRecord {
  std::vector<FacetUse> uses;  // one entry per incident cell
};
std::vector<FacetRecord> collect_facets(const Mesh& mesh);

// Unit outward normal of a boundary facet.
Point facet_normal(const Mesh& mesh, const BoundaryFacet& f);

}  // namespace tmflow
