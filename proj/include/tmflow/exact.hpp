#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tmflow/mesh.hpp"

namespace tmflow {

struct PhysicalParams {
  double nu = 1.0;      // Newtonian kinematic viscosity
  double nu_r = 1.0;    // microrotation viscosity
  double e_hat = 1.0;   // Rayleigh number (buoyancy strength)
  double alpha = 1.0;   // angular diffusion
  double beta = 1.0;    // angular grad-div viscosity
  double kappa = 1.0;   // thermal conductivity
  double D = 1.0;       // micropolar thermal conduction

  void validate() const;
};

// One scalar component of a closed-form field with the derivatives needed to
// synthesize forcing terms: value, spatial gradient, Hessian, time derivative.
struct ScalarExact {
  std::function<double(const Point&, double)> value;
  std::function<void(const Point&, double, double*)> grad;    // 3 entries
  std::function<void(const Point&, double, double*)> hess;    // 9, row-major
  std::function<double(const Point&, double)> dt;
};

// Closed-form solution of the coupled system; angular velocity is a scalar
// in 2D and a 3-vector in 3D. The velocity is divergence-free and the
// pressure has zero mean on its configured domain.
struct ExactSolution {
  int dim = 2;
  std::string name;
  std::vector<ScalarExact> u;  // dim components
  std::vector<ScalarExact> w;  // 1 or 3 components
  ScalarExact T;
  ScalarExact p;

  int angular_components() const { return static_cast<int>(w.size()); }
};

ExactSolution exact_solution_2d();  // polynomial fields on the unit square
ExactSolution exact_solution_3d();  // fields on the unit cube

struct Forcing {
  // f1: dim components, f2: angular components, f3: scalar
  std::function<void(const Point&, double, double*)> f1;
  std::function<void(const Point&, double, double*)> f2;
  std::function<double(const Point&, double)> f3;
};

// Momentum, angular-momentum and heat forcing terms that make the exact
// fields solve the strong-form system with the given coefficients.
Forcing forcing_from_exact(const ExactSolution& exact, const PhysicalParams& params);

// max |div u| sampled at uniformly random points, for verification
double max_divergence_sample(const ExactSolution& exact, double t, int n_points,
                             unsigned seed = 1234);

}  // namespace tmflow
