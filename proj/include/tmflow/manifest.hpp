#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tmflow/scheme.hpp"

namespace tmflow {

struct ManifestError : std::runtime_error {
  explicit ManifestError(const std::string& msg) : std::runtime_error(msg) {}
};

// Plain `key = value` configuration with [section] headers and # comments.
// Unknown keys and malformed values are hard errors; applied defaults are
// collected so the run log can echo them.
struct RunManifest {
  // [run]
  std::string scheme = "rpc1";           // spc1 | rpc1 | rpc2
  int dim = 2;
  std::string elements;                  // p1b-p1 | p2-p1 (default per problem)
  double tend = -1.0;
  double tau = -1.0;                     // explicit time step, or
  std::string tau_law;                   // "h" | "h2"
  std::vector<int> n;                    // cells per unit length (list for studies)
  double h = -1.0;                       // alternative to n

  // [physics]
  PhysicalParams physics;
  bool physics_set = false;
  std::optional<double> rayleigh_override;

  // [problem]
  std::string preset;                    // benchmark name, or
  std::string manufactured;              // ms2d | ms3d

  // [output]
  std::string out_dir = "out";
  int every = 0;
  bool vtk = true;
  bool profiles = true;

  // [solver]
  double rel_tol = 1e-10;
  int max_iter = 0;
  bool reproducible = true;

  std::vector<std::string> applied_defaults;

  std::string serialize() const;
};

RunManifest parse_manifest(const std::string& text);
RunManifest load_manifest_file(const std::string& path);

}  // namespace tmflow
