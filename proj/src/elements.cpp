#include "tmflow/elements.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace tmflow {

const std::array<std::array<int, 2>, 3>& ReferenceElement::tri_edges() {
  static const std::array<std::array<int, 2>, 3> e{{{1, 2}, {2, 0}, {0, 1}}};
  return e;
}

const std::array<std::array<int, 2>, 6>& ReferenceElement::tet_edges() {
  static const std::array<std::array<int, 2>, 6> e{
      {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  return e;
}

std::array<int, 2> ReferenceElement::edge(int e) const {
  return dim_ == 2 ? tri_edges()[e] : tet_edges()[e];
}

ReferenceElement::ReferenceElement(Family family, int dim)
    : family_(family), dim_(dim) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("dim must be 2 or 3");
  const int nv = dim + 1;
  for (int v = 0; v < nv; ++v) dofs_.push_back({DofNode::Vertex, v});
  switch (family) {
    case Family::P1:
      break;
    case Family::P2:
      for (int e = 0; e < n_edges(); ++e) dofs_.push_back({DofNode::Edge, e});
      break;
    case Family::P1Bubble:
      dofs_.push_back({DofNode::Cell, 0});
      break;
  }
  n_basis_ = static_cast<int>(dofs_.size());
}

std::array<double, 4> ReferenceElement::dof_bary(int i) const {
  std::array<double, 4> b{0.0, 0.0, 0.0, 0.0};
  const DofNode& d = dofs_[i];
  switch (d.kind) {
    case DofNode::Vertex:
      b[d.index] = 1.0;
      break;
    case DofNode::Edge: {
      const auto e = edge(d.index);
      b[e[0]] = 0.5;
      b[e[1]] = 0.5;
      break;
    }
    case DofNode::Cell:
      for (int v = 0; v <= dim_; ++v) b[v] = 1.0 / (dim_ + 1);
      break;
  }
  return b;
}

int ReferenceElement::poly_degree() const {
  switch (family_) {
    case Family::P1:
      return 1;
    case Family::P2:
      return 2;
    case Family::P1Bubble:
      return dim_ + 1;
  }
  return 1;
}

void ReferenceElement::eval(const double* l, double* v) const {
  const int nv = dim_ + 1;
  switch (family_) {
    case Family::P1:
      for (int i = 0; i < nv; ++i) v[i] = l[i];
      break;
    case Family::P2:
      for (int i = 0; i < nv; ++i) v[i] = l[i] * (2.0 * l[i] - 1.0);
      for (int e = 0; e < n_edges(); ++e) {
        const auto ed = edge(e);
        v[nv + e] = 4.0 * l[ed[0]] * l[ed[1]];
      }
      break;
    case Family::P1Bubble: {
      for (int i = 0; i < nv; ++i) v[i] = l[i];
      double b = dim_ == 2 ? 27.0 : 256.0;
      for (int i = 0; i < nv; ++i) b *= l[i];
      v[nv] = b;
      break;
    }
  }
}

void ReferenceElement::eval_dbary(const double* l, double* d) const {
  const int nv = dim_ + 1;
  std::memset(d, 0, sizeof(double) * n_basis_ * nv);
  auto at = [&](int k, int j) -> double& { return d[k * nv + j]; };
  switch (family_) {
    case Family::P1:
      for (int i = 0; i < nv; ++i) at(i, i) = 1.0;
      break;
    case Family::P2:
      for (int i = 0; i < nv; ++i) at(i, i) = 4.0 * l[i] - 1.0;
      for (int e = 0; e < n_edges(); ++e) {
        const auto ed = edge(e);
        at(nv + e, ed[0]) = 4.0 * l[ed[1]];
        at(nv + e, ed[1]) = 4.0 * l[ed[0]];
      }
      break;
    case Family::P1Bubble: {
      for (int i = 0; i < nv; ++i) at(i, i) = 1.0;
      const double scale = dim_ == 2 ? 27.0 : 256.0;
      for (int j = 0; j < nv; ++j) {
        double prod = scale;
        for (int i = 0; i < nv; ++i)
          if (i != j) prod *= l[i];
        at(nv, j) = prod;
      }
      break;
    }
  }
}

std::vector<double> eval_basis(const ReferenceElement& elem,
                               std::span<const double> bary) {
  if (static_cast<int>(bary.size()) != elem.dim() + 1)
    throw std::invalid_argument("barycentric point has wrong length");
  double sum = 0.0;
  for (double l : bary) sum += l;
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("barycentric coordinates must sum to 1");
  std::vector<double> v(elem.n_basis());
  elem.eval(bary.data(), v.data());
  return v;
}

}  // namespace tmflow
