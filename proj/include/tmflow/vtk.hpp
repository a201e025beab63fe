#pragma once

#include <string>

#include "tmflow/space.hpp"

namespace tmflow {

// Legacy ASCII VTK unstructured grid with vertex-sampled point data:
// VECTORS velocity, SCALARS pressure, SCALARS temperature, and the angular
// velocity as a scalar (2D) or vector (3D). Higher-order dofs are dropped;
// only vertex values are written.
void write_vtk(const std::string& path, const Field& velocity,
               const Field& pressure, const Field& angular,
               const Field& temperature);

}  // namespace tmflow
