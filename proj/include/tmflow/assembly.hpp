#pragma once

#include <functional>
#include <span>

#include "tmflow/quadrature.hpp"
#include "tmflow/space.hpp"
#include "tmflow/sparse.hpp"

namespace tmflow {

// Affine geometry of one cell: Jacobian determinant and the physical
// gradients of the barycentric coordinates.
struct CellGeometry {
  int dim = 2;
  double detJ = 0.0;
  double volume = 0.0;
  std::array<Point, 4> vertex;
  std::array<std::array<double, 3>, 4> grad_lambda{};  // (dim+1) rows

  static CellGeometry make(const Mesh& mesh, int cell);
  Point map(const double* bary) const;
};

// Physical gradients of all basis functions at a barycentric point.
void eval_grad_basis(const ReferenceElement& elem, const double* bary,
                     const CellGeometry& geom, double grads[][3]);

enum class BilinearKind { Mass, Stiffness, DivDiv, PressureDiv, Grad };
enum class CurlDirection { VelToAng, AngToVel };

// Quadrature degree policy: bilinear forms integrate products of two basis
// arguments exactly; convective/forcing terms carry two extra degrees for
// the nonpolynomial data.
int bilinear_quad_degree(const FunctionSpace& a, const FunctionSpace& b);
int trilinear_quad_degree(const FunctionSpace& a, const FunctionSpace& b,
                          const FunctionSpace& c);
int functional_quad_degree(const FunctionSpace& test);

// Entry (i, j) = coeff * form(trial_j, test_i).
//   Mass        (u, v)
//   Stiffness   (grad u, grad v)
//   DivDiv      (div u, div v)            vector/vector
//   PressureDiv (p, div v)                scalar trial, vector test
//   Grad        (grad p, v)               scalar trial, vector test
SparseMatrix assemble_bilinear(BilinearKind kind, const FunctionSpace& trial,
                               const FunctionSpace& test, double coeff = 1.0);

// Skew-symmetric convection operator for a discrete advecting velocity:
// the antisymmetric part of ((a . grad) u, v), so x^T M x = 0 by
// construction. trial and test must coincide (scalar or vector).
SparseMatrix assemble_convection(const Field& advecting,
                                 const FunctionSpace& trial,
                                 const FunctionSpace& test);

// (curl u, z) couplings with the planar conventions in 2D:
// curl u = d u2/dx - d u1/dy (scalar), curl w = (dw/dy, -dw/dx).
SparseMatrix assemble_curl_coupling(const FunctionSpace& trial,
                                    const FunctionSpace& test,
                                    CurlDirection direction);

// (curl(w) . grad T, G) with a discrete angular field w; T trial, G test.
SparseMatrix assemble_thermal_curl(const Field& angular,
                                   const FunctionSpace& trial,
                                   const FunctionSpace& test);

// Linear functional (integrand, basis_i). The integrand fills one value per
// test-space component and may inspect the cell (e.g. to evaluate discrete
// fields at the quadrature point).
struct IntegrandPoint {
  int cell;
  Point x;
  const double* bary;
};
std::vector<double> assemble_functional(
    const FunctionSpace& test,
    const std::function<void(const IntegrandPoint&, double*)>& integrand,
    int quad_degree = 0);

// Dirichlet elimination preserving symmetry: constrained rows get the
// identity, constrained columns move to the right-hand side.
void apply_dirichlet(SparseMatrix& A, std::vector<double>& rhs,
                     std::span<const int> dofs, std::span<const double> values);

// Elementwise integral of a pointwise expression over the mesh.
double integrate(const Mesh& mesh, int quad_degree,
                 const std::function<double(const IntegrandPoint&)>& f);

}  // namespace tmflow
