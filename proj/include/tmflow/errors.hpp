#pragma once

#include <stdexcept>
#include <string>

namespace tmflow {

struct SingularGeometry : std::runtime_error {
  explicit SingularGeometry(const std::string& msg) : std::runtime_error(msg) {}
};

struct UnsupportedFeature : std::runtime_error {
  explicit UnsupportedFeature(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace tmflow
