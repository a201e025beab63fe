#pragma once

#include <string>
#include <vector>

#include "tmflow/assembly.hpp"

namespace tmflow {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Fast algebraic invariant suite: quadrature exactness, reference-element
// identities, dense-assembly equivalence on tiny meshes, skew symmetry of
// the convection operator, the grad/div/curl orthogonality identity,
// projection residuals, zero-data runs, pressure recentring.
std::vector<CheckResult> run_self_checks();

// Dense brute-force assemblies used as oracles; independent of the sparse
// assembly path (plain nested loops, dense storage).
using DenseMatrix = std::vector<std::vector<double>>;
DenseMatrix dense_bilinear(BilinearKind kind, const FunctionSpace& trial,
                           const FunctionSpace& test, double coeff = 1.0);
DenseMatrix dense_convection(const Field& advecting, const FunctionSpace& trial,
                             const FunctionSpace& test);
DenseMatrix dense_curl_coupling(const FunctionSpace& trial,
                                const FunctionSpace& test, CurlDirection dir);
DenseMatrix dense_thermal_curl(const Field& angular, const FunctionSpace& trial,
                               const FunctionSpace& test);

}  // namespace tmflow
