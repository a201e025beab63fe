#pragma once

#include <array>
#include <vector>

namespace tmflow {

// Quadrature on the reference simplex. Weights sum to the reference volume
// (1/2 for triangles, 1/6 for tetrahedra).
struct QuadratureRule {
  int dim = 2;
  int exactness_degree = 1;
  std::vector<std::array<double, 4>> points;  // barycentric
  std::vector<double> weights;
  int size() const { return static_cast<int>(weights.size()); }
};

// Degree 1 and 2 use the classical symmetric rules; higher degrees come from
// a collapsed-coordinate Gauss tensor product, exact for the requested total
// degree with positive weights.
const QuadratureRule& quadrature(int dim, int degree);

// Gauss-Legendre nodes/weights on [0,1].
void gauss_legendre01(int n, std::vector<double>& x, std::vector<double>& w);

// Exact integral of x^a y^b (and z^c) over the reference simplex, for tests.
double simplex_monomial_integral(int dim, int a, int b, int c = 0);

}  // namespace tmflow
