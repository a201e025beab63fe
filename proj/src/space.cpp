#include "tmflow/space.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace tmflow {

FunctionSpace::FunctionSpace(const Mesh& mesh, Family family, int components)
    : mesh_(&mesh),
      family_(family),
      components_(components),
      element_(family, mesh.dim) {
  if (components != 1 && components != mesh.dim)
    throw std::invalid_argument("component count must be 1 or dim");
  const int nv = mesh.n_vertices();
  if (family == Family::P1) {
    n_scalar_nodes_ = nv;
  } else if (family == Family::P1Bubble) {
    n_scalar_nodes_ = nv + mesh.n_cells();
  } else {
    // Global edge numbering from the cells.
    edge_of_.reserve(mesh.n_cells() * element_.n_edges());
    auto& edge_of = edge_of_;
    cell_edges_.assign(static_cast<size_t>(mesh.n_cells()) * element_.n_edges(), -1);
    for (int c = 0; c < mesh.n_cells(); ++c) {
      for (int e = 0; e < element_.n_edges(); ++e) {
        const auto le = element_.edge(e);
        int a = mesh.cells[c][le[0]], b = mesh.cells[c][le[1]];
        if (a > b) std::swap(a, b);
        const long long key = static_cast<long long>(a) * nv + b;
        auto it = edge_of.find(key);
        int id;
        if (it == edge_of.end()) {
          id = static_cast<int>(edge_vertices_.size());
          edge_vertices_.push_back({a, b});
          edge_of.emplace(key, id);
        } else {
          id = it->second;
        }
        cell_edges_[static_cast<size_t>(c) * element_.n_edges() + e] = id;
      }
    }
    n_scalar_nodes_ = nv + n_edges();
  }
}

Field::Field(const FunctionSpace& s, std::vector<double> x)
    : space(&s), coeffs(std::move(x)) {
  if (static_cast<int>(coeffs.size()) != s.n_dofs())
    throw std::invalid_argument("coefficient length does not match space");
}

int FunctionSpace::cell_node(int cell, int k) const {
  const auto& d = element_.dofs()[k];
  switch (d.kind) {
    case ReferenceElement::DofNode::Vertex:
      return mesh_->cells[cell][d.index];
    case ReferenceElement::DofNode::Edge:
      return mesh_->n_vertices() +
             cell_edges_[static_cast<size_t>(cell) * element_.n_edges() + d.index];
    case ReferenceElement::DofNode::Cell:
      return mesh_->n_vertices() + cell;
  }
  return -1;
}

Point FunctionSpace::node_point(int node) const {
  const int nv = mesh_->n_vertices();
  if (node < nv) return mesh_->vertices[node];
  if (family_ == Family::P2) {
    const auto& e = edge_vertices_[node - nv];
    const Point& a = mesh_->vertices[e[0]];
    const Point& b = mesh_->vertices[e[1]];
    return {0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]), 0.5 * (a[2] + b[2])};
  }
  // bubble node: cell barycenter
  const int c = node - nv;
  Point p{0.0, 0.0, 0.0};
  const int vpc = mesh_->verts_per_cell();
  for (int i = 0; i < vpc; ++i) {
    const Point& v = mesh_->vertices[mesh_->cells[c][i]];
    for (int a = 0; a < 3; ++a) p[a] += v[a] / vpc;
  }
  return p;
}

bool FunctionSpace::node_is_interior_bubble(int node) const {
  return family_ == Family::P1Bubble && node >= mesh_->n_vertices();
}

int FunctionSpace::edge_id(int vmin, int vmax) const {
  const long long key = static_cast<long long>(vmin) * mesh_->n_vertices() + vmax;
  auto it = edge_of_.find(key);
  return it == edge_of_.end() ? -1 : it->second;
}

double Field::eval(int cell, const double* bary, int comp) const {
  const auto& el = space->element();
  std::array<double, 10> phi;
  el.eval(bary, phi.data());
  double s = 0.0;
  for (int k = 0; k < el.n_basis(); ++k)
    s += coeffs[space->dof(space->cell_node(cell, k), comp)] * phi[k];
  return s;
}

void Field::eval_all(int cell, const double* bary, double* out) const {
  const auto& el = space->element();
  std::array<double, 10> phi;
  el.eval(bary, phi.data());
  for (int c = 0; c < space->components(); ++c) out[c] = 0.0;
  for (int k = 0; k < el.n_basis(); ++k) {
    const int node = space->cell_node(cell, k);
    for (int c = 0; c < space->components(); ++c)
      out[c] += coeffs[space->dof(node, c)] * phi[k];
  }
}

double Field::eval_at(const Point& x, int comp) const {
  std::array<double, 4> bary;
  const int cell = space->mesh().locate(x, bary);
  if (cell < 0) throw std::invalid_argument("point outside the mesh");
  return eval(cell, bary.data(), comp);
}

Field interpolate(const FunctionSpace& space,
                  const std::function<double(const Point&, int)>& f) {
  Field out(space);
  const int ncomp = space.components();
  const int nv = space.mesh().n_vertices();
  const int n_plain = space.family() == Family::P1Bubble ? nv : space.n_scalar_nodes();
  for (int node = 0; node < n_plain; ++node) {
    const Point p = space.node_point(node);
    for (int c = 0; c < ncomp; ++c) out.coeffs[space.dof(node, c)] = f(p, c);
  }
  if (space.family() == Family::P1Bubble) {
    // Bubble coefficient: match f at the barycenter on top of the P1 part.
    const int d = space.mesh().dim;
    for (int cell = 0; cell < space.mesh().n_cells(); ++cell) {
      const int node = nv + cell;
      const Point p = space.node_point(node);
      for (int c = 0; c < ncomp; ++c) {
        double p1_part = 0.0;
        for (int k = 0; k <= d; ++k)
          p1_part += out.coeffs[space.dof(space.mesh().cells[cell][k], c)] / (d + 1);
        out.coeffs[space.dof(node, c)] = f(p, c) - p1_part;
      }
    }
  }
  return out;
}

namespace {

// Scalar nodes supported on a boundary facet: its vertices plus, for P2,
// the midpoints of its edges.
void facet_nodes(const FunctionSpace& space, const BoundaryFacet& f,
                 std::vector<int>& out) {
  out.clear();
  const int dim = space.mesh().dim;
  const int nfv = dim;  // facet vertex count
  for (int i = 0; i < nfv; ++i) out.push_back(f.v[i]);
  if (space.family() == Family::P2) {
    const int nv = space.mesh().n_vertices();
    auto add_edge = [&](int a, int b) {
      if (a > b) std::swap(a, b);
      const int e = space.edge_id(a, b);
      if (e >= 0) out.push_back(nv + e);
    };
    if (dim == 2) {
      add_edge(f.v[0], f.v[1]);
    } else {
      add_edge(f.v[0], f.v[1]);
      add_edge(f.v[1], f.v[2]);
      add_edge(f.v[0], f.v[2]);
    }
  }
}

}  // namespace

std::vector<int> classify_boundary_dofs(
    const FunctionSpace& space,
    const std::function<bool(const Point&)>& predicate) {
  std::set<int> dofs;
  std::vector<int> nodes;
  for (const auto& f : space.mesh().boundary_facets) {
    facet_nodes(space, f, nodes);
    for (int node : nodes) {
      if (!predicate(space.node_point(node))) continue;
      for (int c = 0; c < space.components(); ++c) dofs.insert(space.dof(node, c));
    }
  }
  return {dofs.begin(), dofs.end()};
}

std::array<std::vector<int>, 6> boundary_nodes_by_tag(const FunctionSpace& space) {
  std::array<std::set<int>, 6> sets;
  std::vector<int> nodes;
  for (const auto& f : space.mesh().boundary_facets) {
    facet_nodes(space, f, nodes);
    for (int node : nodes) sets[f.tag].insert(node);
  }
  std::array<std::vector<int>, 6> out;
  for (int t = 0; t < 6; ++t) out[t] = {sets[t].begin(), sets[t].end()};
  return out;
}

std::vector<int> boundary_nodes(const FunctionSpace& space) {
  std::set<int> all;
  std::vector<int> nodes;
  for (const auto& f : space.mesh().boundary_facets) {
    facet_nodes(space, f, nodes);
    all.insert(nodes.begin(), nodes.end());
  }
  return {all.begin(), all.end()};
}

}  // namespace tmflow
