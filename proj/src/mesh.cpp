#include "tmflow/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "tmflow/errors.hpp"

namespace tmflow {

int tag_axis(int tag, int dim) {
  switch (tag) {
    case kLeft:
    case kRight:
      return 0;
    case kBottom:
    case kTop:
      return dim == 2 ? 1 : 2;
    case kFront:
    case kBack:
      return 1;
    default:
      throw std::invalid_argument("unknown boundary tag");
  }
}

bool tag_is_upper(int tag) { return tag == kRight || tag == kTop || tag == kBack; }

namespace {

double det2(const Point& a, const Point& b) { return a[0] * b[1] - a[1] * b[0]; }

double det3(const Point& a, const Point& b, const Point& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

Point sub(const Point& a, const Point& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

double signed_volume(const Mesh& m, const std::array<int, 4>& cell, int dim) {
  const Point& p0 = m.vertices[cell[0]];
  if (dim == 2) {
    return 0.5 * det2(sub(m.vertices[cell[1]], p0), sub(m.vertices[cell[2]], p0));
  }
  return det3(sub(m.vertices[cell[1]], p0), sub(m.vertices[cell[2]], p0),
              sub(m.vertices[cell[3]], p0)) / 6.0;
}

// Local facets ordered so that, with a positively oriented cell, the facet
// normal points outward. Shared facets then appear with opposite orientation
// from their two incident cells.
void local_facets(int dim, const std::array<int, 4>& cell,
                  std::vector<std::array<int, 3>>& out) {
  out.clear();
  if (dim == 2) {
    out.push_back({cell[1], cell[2], -1});
    out.push_back({cell[2], cell[0], -1});
    out.push_back({cell[0], cell[1], -1});
  } else {
    out.push_back({cell[1], cell[2], cell[3]});
    out.push_back({cell[0], cell[3], cell[2]});
    out.push_back({cell[0], cell[1], cell[3]});
    out.push_back({cell[0], cell[2], cell[1]});
  }
}

std::array<int, 3> sorted_key(std::array<int, 3> f) {
  std::sort(f.begin(), f.end());
  return f;
}

}  // namespace

Mesh build_structured_mesh(const Point& lo, const Point& hi,
                           const std::array<int, 3>& n, int dim) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("dim must be 2 or 3");
  for (int a = 0; a < dim; ++a) {
    if (n[a] < 1) throw std::invalid_argument("cell count per axis must be >= 1");
    if (!(hi[a] > lo[a])) throw std::invalid_argument("box max must exceed box min");
  }

  Mesh m;
  m.dim = dim;
  m.lo = lo;
  m.hi = hi;
  m.n_axis = n;
  if (dim == 2) m.n_axis[2] = 1;

  const int nx = n[0], ny = n[1], nz = dim == 3 ? n[2] : 0;
  const double dx = (hi[0] - lo[0]) / nx;
  const double dy = (hi[1] - lo[1]) / ny;
  const double dz = dim == 3 ? (hi[2] - lo[2]) / nz : 0.0;

  if (dim == 2) {
    m.vertices.reserve((nx + 1) * (ny + 1));
    for (int j = 0; j <= ny; ++j)
      for (int i = 0; i <= nx; ++i)
        m.vertices.push_back({lo[0] + i * dx, lo[1] + j * dy, 0.0});
    auto vid = [nx](int i, int j) { return j * (nx + 1) + i; };
    m.cells.reserve(2 * nx * ny);
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const int ll = vid(i, j), lr = vid(i + 1, j);
        const int ul = vid(i, j + 1), ur = vid(i + 1, j + 1);
        m.cells.push_back({ll, lr, ur, -1});
        m.cells.push_back({ll, ur, ul, -1});
      }
  } else {
    m.vertices.reserve((nx + 1) * (ny + 1) * (nz + 1));
    for (int k = 0; k <= nz; ++k)
      for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i)
          m.vertices.push_back({lo[0] + i * dx, lo[1] + j * dy, lo[2] + k * dz});
    auto vid = [nx, ny](int i, int j, int k) {
      return (k * (ny + 1) + j) * (nx + 1) + i;
    };
    // Kuhn subdivision: one tetrahedron per permutation of the axes, all
    // sharing the main diagonal of the cube.
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                    {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    m.cells.reserve(6 * nx * ny * nz);
    for (int k = 0; k < nz; ++k)
      for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
          for (const auto& perm : perms) {
            std::array<int, 3> c{i, j, k};
            std::array<int, 4> tet;
            tet[0] = vid(c[0], c[1], c[2]);
            for (int s = 0; s < 3; ++s) {
              c[perm[s]] += 1;
              tet[s + 1] = vid(c[0], c[1], c[2]);
            }
            std::array<int, 4> cell = tet;
            if (signed_volume(m, cell, 3) < 0.0) std::swap(cell[2], cell[3]);
            m.cells.push_back(cell);
          }
  }

  // Max cell diameter.
  m.h = 0.0;
  const int vpc = m.verts_per_cell();
  for (const auto& cell : m.cells)
    for (int a = 0; a < vpc; ++a)
      for (int b = a + 1; b < vpc; ++b) {
        const Point d = sub(m.vertices[cell[a]], m.vertices[cell[b]]);
        m.h = std::max(m.h, std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]));
      }

  // Boundary facets: those used by exactly one cell.
  std::map<std::array<int, 3>, std::vector<FacetUse>> facets;
  std::vector<std::array<int, 3>> local;
  for (int c = 0; c < m.n_cells(); ++c) {
    local_facets(dim, m.cells[c], local);
    for (const auto& f : local) facets[sorted_key(f)].push_back({f, c});
  }
  const double tol = 1e-10 * std::max({hi[0] - lo[0], hi[1] - lo[1],
                                       dim == 3 ? hi[2] - lo[2] : 0.0});
  for (const auto& [key, uses] : facets) {
    if (uses.size() != 1) continue;
    BoundaryFacet bf;
    bf.v = uses[0].ordered;
    bf.cell = uses[0].cell;
    bf.tag = -1;
    for (int tag = 0; tag < 2 * dim; ++tag) {
      const int axis = tag_axis(tag, dim);
      const double plane = tag_is_upper(tag) ? hi[axis] : lo[axis];
      bool on = true;
      for (int a = 0; a < dim && on; ++a)
        if (bf.v[a] >= 0 && std::abs(m.vertices[bf.v[a]][axis] - plane) > tol) on = false;
      if (on) {
        bf.tag = tag;
        break;
      }
    }
    if (bf.tag < 0) throw std::runtime_error("boundary facet not on a box face");
    m.boundary_facets.push_back(bf);
  }
  return m;
}

double Mesh::cell_volume(int c) const {
  const double v = signed_volume(*this, cells[c], dim);
  if (v <= 0.0) throw SingularGeometry("cell with nonpositive volume");
  return v;
}

double Mesh::domain_volume() const {
  double v = (hi[0] - lo[0]) * (hi[1] - lo[1]);
  if (dim == 3) v *= hi[2] - lo[2];
  return v;
}

std::array<double, 4> barycentric(const Mesh& mesh, int cell, const Point& x) {
  const auto& c = mesh.cells[cell];
  const Point& p0 = mesh.vertices[c[0]];
  std::array<double, 4> lam{0.0, 0.0, 0.0, 0.0};
  if (mesh.dim == 2) {
    const Point e1 = sub(mesh.vertices[c[1]], p0);
    const Point e2 = sub(mesh.vertices[c[2]], p0);
    const Point r = sub(x, p0);
    const double det = det2(e1, e2);
    lam[1] = (r[0] * e2[1] - r[1] * e2[0]) / det;
    lam[2] = (e1[0] * r[1] - e1[1] * r[0]) / det;
    lam[0] = 1.0 - lam[1] - lam[2];
  } else {
    const Point e1 = sub(mesh.vertices[c[1]], p0);
    const Point e2 = sub(mesh.vertices[c[2]], p0);
    const Point e3 = sub(mesh.vertices[c[3]], p0);
    const Point r = sub(x, p0);
    const double det = det3(e1, e2, e3);
    lam[1] = det3(r, e2, e3) / det;
    lam[2] = det3(e1, r, e3) / det;
    lam[3] = det3(e1, e2, r) / det;
    lam[0] = 1.0 - lam[1] - lam[2] - lam[3];
  }
  return lam;
}

int Mesh::locate(const Point& x, std::array<double, 4>& bary) const {
  const int cells_per_box = dim == 2 ? 2 : 6;
  std::array<int, 3> idx{0, 0, 0};
  for (int a = 0; a < dim; ++a) {
    const double w = (hi[a] - lo[a]) / n_axis[a];
    const double s = (x[a] - lo[a]) / w;
    if (s < -1e-12 || s > n_axis[a] + 1e-12) return -1;
    idx[a] = std::clamp(static_cast<int>(std::floor(s)), 0, n_axis[a] - 1);
  }
  const int box = dim == 2 ? idx[1] * n_axis[0] + idx[0]
                           : (idx[2] * n_axis[1] + idx[1]) * n_axis[0] + idx[0];
  int best = -1;
  double best_min = -1e30;
  for (int s = 0; s < cells_per_box; ++s) {
    const int c = box * cells_per_box + s;
    const auto lam = barycentric(*this, c, x);
    double mn = lam[0];
    for (int a = 1; a <= dim; ++a) mn = std::min(mn, lam[a]);
    if (mn > best_min) {
      best_min = mn;
      best = c;
      bary = lam;
    }
  }
  if (best_min < -1e-9) return -1;
  return best;
}

std::vector<FacetRecord> collect_facets(const Mesh& mesh) {
  std::map<std::array<int, 3>, std::vector<FacetUse>> facets;
  std::vector<std::array<int, 3>> local;
  for (int c = 0; c < mesh.n_cells(); ++c) {
    local_facets(mesh.dim, mesh.cells[c], local);
    for (const auto& f : local) facets[sorted_key(f)].push_back({f, c});
  }
  std::vector<FacetRecord> out;
  out.reserve(facets.size());
  for (auto& [key, uses] : facets) out.push_back({std::move(uses)});
  return out;
}

Point facet_normal(const Mesh& mesh, const BoundaryFacet& f) {
  Point n{0.0, 0.0, 0.0};
  if (mesh.dim == 2) {
    const Point t = sub(mesh.vertices[f.v[1]], mesh.vertices[f.v[0]]);
    n = {t[1], -t[0], 0.0};
  } else {
    const Point a = sub(mesh.vertices[f.v[1]], mesh.vertices[f.v[0]]);
    const Point b = sub(mesh.vertices[f.v[2]], mesh.vertices[f.v[0]]);
    n = {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
         a[0] * b[1] - a[1] * b[0]};
  }
  const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  return {n[0] / len, n[1] / len, n[2] / len};
}

}  // namespace tmflow
