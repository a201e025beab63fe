#include "tmflow/profile.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace tmflow {

std::vector<ProfileSample> extract_profile(const Field& field, int component,
                                           const Point& a, const Point& b,
                                           int n_samples) {
  if (n_samples < 2) throw std::invalid_argument("need at least two samples");
  const Mesh& mesh = field.space->mesh();
  const double len = std::sqrt((b[0] - a[0]) * (b[0] - a[0]) +
                               (b[1] - a[1]) * (b[1] - a[1]) +
                               (b[2] - a[2]) * (b[2] - a[2]));
  std::vector<ProfileSample> out;
  out.reserve(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    const double s = static_cast<double>(i) / (n_samples - 1);
    Point x{a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1]),
            a[2] + s * (b[2] - a[2])};
    std::array<double, 4> bary;
    const int cell = mesh.locate(x, bary);
    if (cell < 0) throw std::invalid_argument("profile line leaves the domain");
    out.push_back({s * len, field.eval(cell, bary.data(), component)});
  }
  return out;
}

void write_profile_csv(std::ostream& os, const std::vector<ProfileSample>& samples) {
  os << "s,value\n";
  char buf[128];
  for (const auto& p : samples) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", p.s, p.value);
    os << buf;
  }
}

}  // namespace tmflow
