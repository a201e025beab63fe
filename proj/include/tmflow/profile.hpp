#pragma once

#include <iosfwd>
#include <vector>

#include "tmflow/space.hpp"

namespace tmflow {

struct ProfileSample {
  double s;      // position along the line, measured from the start point
  double value;
};

// Samples one field component at evenly spaced points on the segment
// [a, b]; both endpoints must lie inside the domain box.
std::vector<ProfileSample> extract_profile(const Field& field, int component,
                                           const Point& a, const Point& b,
                                           int n_samples = 201);

void write_profile_csv(std::ostream& os, const std::vector<ProfileSample>& samples);

}  // namespace tmflow
