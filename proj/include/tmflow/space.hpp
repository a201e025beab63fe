#pragma once

#include <functional>
#include <unordered_map>
#include <vector>

#include "tmflow/elements.hpp"
#include "tmflow/mesh.hpp"

namespace tmflow {

// Continuous scalar or vector finite element space on a simplicial mesh.
// Scalar nodes are numbered vertices first, then edge midpoints (P2) or cell
// bubbles (P1+bubble). Vector dofs interleave components:
// dof = node * components + component.
class FunctionSpace {
 public:
  FunctionSpace(const Mesh& mesh, Family family, int components);

  const Mesh& mesh() const { return *mesh_; }
  Family family() const { return family_; }
  int components() const { return components_; }
  const ReferenceElement& element() const { return element_; }

  int n_scalar_nodes() const { return n_scalar_nodes_; }
  int n_dofs() const { return n_scalar_nodes_ * components_; }
  int n_local_basis() const { return element_.n_basis(); }

  // Global scalar node of local basis k on a cell.
  int cell_node(int cell, int k) const;
  int dof(int node, int comp) const { return node * components_ + comp; }

  Point node_point(int node) const;
  bool node_is_interior_bubble(int node) const;

  int n_edges() const { return static_cast<int>(edge_vertices_.size()); }
  int edge_id(int vmin, int vmax) const;  // -1 if absent

 private:
  const Mesh* mesh_;
  Family family_;
  int components_;
  ReferenceElement element_;
  int n_scalar_nodes_;
  std::vector<std::array<int, 2>> edge_vertices_;      // P2 only
  std::vector<int> cell_edges_;                        // P2: cell-major
  std::unordered_map<long long, int> edge_of_;         // (vmin*nv+vmax) -> edge
};

// Coefficient vector over a space.
struct Field {
  const FunctionSpace* space = nullptr;
  std::vector<double> coeffs;

  explicit Field(const FunctionSpace& s) : space(&s), coeffs(s.n_dofs(), 0.0) {}
  Field(const FunctionSpace& s, std::vector<double> x);

  // Value of one component at a barycentric point of a cell.
  double eval(int cell, const double* bary, int comp) const;
  void eval_all(int cell, const double* bary, double* out) const;
  // Value at an arbitrary point (structured cell lookup).
  double eval_at(const Point& x, int comp) const;
};

// Nodal interpolation: f(point, comp). Bubble coefficients are set so the
// interpolant matches f at the cell barycenter.
Field interpolate(const FunctionSpace& space,
                  const std::function<double(const Point&, int)>& f);

// Dofs whose geometric support point lies on a boundary facet accepted by
// the predicate. Bubble dofs are never boundary dofs.
std::vector<int> classify_boundary_dofs(
    const FunctionSpace& space,
    const std::function<bool(const Point&)>& predicate);

// Boundary scalar nodes grouped by box-face tag.
std::array<std::vector<int>, 6> boundary_nodes_by_tag(const FunctionSpace& space);

// All boundary scalar nodes.
std::vector<int> boundary_nodes(const FunctionSpace& space);

}  // namespace tmflow
