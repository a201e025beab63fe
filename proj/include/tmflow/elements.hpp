#pragma once

#include <array>
#include <span>
#include <vector>

namespace tmflow {

enum class Family { P1, P2, P1Bubble };

// Scalar nodal basis on the reference simplex, expressed in barycentric
// coordinates. The cell bubble is normalized to 1 at the barycenter
// (27*l0*l1*l2 on triangles, 256*l0*l1*l2*l3 on tetrahedra).
class ReferenceElement {
 public:
  struct DofNode {
    enum Kind { Vertex, Edge, Cell } kind;
    int index;  // vertex index, edge index, or 0
  };

  ReferenceElement(Family family, int dim);

  Family family() const { return family_; }
  int dim() const { return dim_; }
  int n_basis() const { return n_basis_; }
  const std::vector<DofNode>& dofs() const { return dofs_; }
  std::array<double, 4> dof_bary(int i) const;

  // Polynomial degree used by the quadrature policy (bubble counts as the
  // full degree of the product: 3 on triangles, 4 on tetrahedra).
  int poly_degree() const;

  void eval(const double* bary, double* values) const;
  // d values[k] / d lambda[j], row-major n_basis x (dim+1)
  void eval_dbary(const double* bary, double* deriv) const;

  static const std::array<std::array<int, 2>, 3>& tri_edges();
  static const std::array<std::array<int, 2>, 6>& tet_edges();
  int n_edges() const { return dim_ == 2 ? 3 : 6; }
  std::array<int, 2> edge(int e) const;

 private:
  Family family_;
  int dim_;
  int n_basis_;
  std::vector<DofNode> dofs_;
};

// Validating wrapper: rejects barycentric points that do not sum to 1.
std::vector<double> eval_basis(const ReferenceElement& elem,
                               std::span<const double> bary);

}  // namespace tmflow
