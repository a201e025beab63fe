#include "tmflow/assembly.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "tmflow/errors.hpp"

namespace tmflow {

CellGeometry CellGeometry::make(const Mesh& mesh, int cell) {
  CellGeometry g;
  g.dim = mesh.dim;
  const auto& c = mesh.cells[cell];
  for (int i = 0; i <= g.dim; ++i) g.vertex[i] = mesh.vertices[c[i]];
  const Point& p0 = g.vertex[0];
  if (g.dim == 2) {
    const double a = g.vertex[1][0] - p0[0], b = g.vertex[2][0] - p0[0];
    const double cc = g.vertex[1][1] - p0[1], d = g.vertex[2][1] - p0[1];
    g.detJ = a * d - b * cc;
    if (g.detJ <= 0.0) throw SingularGeometry("degenerate or inverted triangle");
    g.volume = 0.5 * g.detJ;
    // rows of J^{-1}
    g.grad_lambda[1] = {d / g.detJ, -b / g.detJ, 0.0};
    g.grad_lambda[2] = {-cc / g.detJ, a / g.detJ, 0.0};
  } else {
    double J[3][3];
    for (int i = 0; i < 3; ++i)
      for (int a = 0; a < 3; ++a) J[a][i] = g.vertex[i + 1][a] - p0[a];
    const double det = J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
                       J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
                       J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
    if (det <= 0.0) throw SingularGeometry("degenerate or inverted tetrahedron");
    g.detJ = det;
    g.volume = det / 6.0;
    double inv[3][3];
    inv[0][0] = (J[1][1] * J[2][2] - J[1][2] * J[2][1]) / det;
    inv[0][1] = (J[0][2] * J[2][1] - J[0][1] * J[2][2]) / det;
    inv[0][2] = (J[0][1] * J[1][2] - J[0][2] * J[1][1]) / det;
    inv[1][0] = (J[1][2] * J[2][0] - J[1][0] * J[2][2]) / det;
    inv[1][1] = (J[0][0] * J[2][2] - J[0][2] * J[2][0]) / det;
    inv[1][2] = (J[0][2] * J[1][0] - J[0][0] * J[1][2]) / det;
    inv[2][0] = (J[1][0] * J[2][1] - J[1][1] * J[2][0]) / det;
    inv[2][1] = (J[0][1] * J[2][0] - J[0][0] * J[2][1]) / det;
    inv[2][2] = (J[0][0] * J[1][1] - J[0][1] * J[1][0]) / det;
    for (int i = 1; i <= 3; ++i)
      g.grad_lambda[i] = {inv[i - 1][0], inv[i - 1][1], inv[i - 1][2]};
  }
  for (int a = 0; a < 3; ++a) {
    double s = 0.0;
    for (int i = 1; i <= g.dim; ++i) s += g.grad_lambda[i][a];
    g.grad_lambda[0][a] = -s;
  }
  return g;
}

Point CellGeometry::map(const double* bary) const {
  Point p{0.0, 0.0, 0.0};
  for (int i = 0; i <= dim; ++i)
    for (int a = 0; a < 3; ++a) p[a] += bary[i] * vertex[i][a];
  return p;
}

void eval_grad_basis(const ReferenceElement& elem, const double* bary,
                     const CellGeometry& geom, double grads[][3]) {
  const int nb = elem.n_basis();
  const int nl = elem.dim() + 1;
  double d[10 * 4];
  elem.eval_dbary(bary, d);
  for (int k = 0; k < nb; ++k) {
    for (int a = 0; a < 3; ++a) {
      double s = 0.0;
      for (int j = 0; j < nl; ++j) s += d[k * nl + j] * geom.grad_lambda[j][a];
      grads[k][a] = s;
    }
  }
}

int bilinear_quad_degree(const FunctionSpace& a, const FunctionSpace& b) {
  return 2 * std::max(a.element().poly_degree(), b.element().poly_degree());
}

int trilinear_quad_degree(const FunctionSpace& a, const FunctionSpace& b,
                          const FunctionSpace& c) {
  const int p = std::max(
      {a.element().poly_degree(), b.element().poly_degree(), c.element().poly_degree()});
  return 2 * p + 2;
}

int functional_quad_degree(const FunctionSpace& test) {
  return 2 * test.element().poly_degree() + 2;
}

namespace {

// Per-quadrature-point basis tables on the reference cell.
struct BasisTable {
  int nq = 0, nb = 0, nl = 0;
  std::vector<double> val;    // nq x nb
  std::vector<double> dbary;  // nq x nb x nl

  BasisTable(const ReferenceElement& e, const QuadratureRule& r) {
    nq = r.size();
    nb = e.n_basis();
    nl = e.dim() + 1;
    val.resize(static_cast<size_t>(nq) * nb);
    dbary.resize(static_cast<size_t>(nq) * nb * nl);
    for (int q = 0; q < nq; ++q) {
      e.eval(r.points[q].data(), &val[static_cast<size_t>(q) * nb]);
      e.eval_dbary(r.points[q].data(), &dbary[static_cast<size_t>(q) * nb * nl]);
    }
  }

  const double* values(int q) const { return &val[static_cast<size_t>(q) * nb]; }
  // physical gradients at point q in a cell
  void grads(int q, const CellGeometry& g, double out[][3]) const {
    const double* d = &dbary[static_cast<size_t>(q) * nb * nl];
    for (int k = 0; k < nb; ++k)
      for (int a = 0; a < 3; ++a) {
        double s = 0.0;
        for (int j = 0; j < nl; ++j) s += d[k * nl + j] * g.grad_lambda[j][a];
        out[k][a] = s;
      }
  }
};

constexpr int kMaxBasis = 10;

void check_same_mesh(const FunctionSpace& a, const FunctionSpace& b) {
  if (&a.mesh() != &b.mesh())
    throw std::invalid_argument("spaces live on different meshes");
}

}  // namespace

SparseMatrix assemble_bilinear(BilinearKind kind, const FunctionSpace& trial,
                               const FunctionSpace& test, double coeff) {
  check_same_mesh(trial, test);
  const Mesh& mesh = trial.mesh();
  const int dim = mesh.dim;
  switch (kind) {
    case BilinearKind::Mass:
    case BilinearKind::Stiffness:
      if (trial.components() != test.components())
        throw std::invalid_argument("component mismatch");
      break;
    case BilinearKind::DivDiv:
      if (trial.components() != dim || test.components() != dim)
        throw std::invalid_argument("div-div needs vector spaces");
      break;
    case BilinearKind::PressureDiv:
    case BilinearKind::Grad:
      if (trial.components() != 1 || test.components() != dim)
        throw std::invalid_argument("needs scalar trial and vector test");
      break;
  }

  const QuadratureRule& rule = quadrature(dim, bilinear_quad_degree(trial, test));
  BasisTable bt_trial(trial.element(), rule);
  BasisTable bt_test(test.element(), rule);
  const int nbt = trial.n_local_basis();
  const int nbs = test.n_local_basis();
  const int ct = trial.components();
  const int cs = test.components();

  std::vector<Triplet> trips;
  trips.reserve(static_cast<size_t>(mesh.n_cells()) * nbt * ct * nbs * cs);
  double gt[kMaxBasis][3], gs[kMaxBasis][3];

  for (int cell = 0; cell < mesh.n_cells(); ++cell) {
    const CellGeometry geom = CellGeometry::make(mesh, cell);
    std::vector<double> local(static_cast<size_t>(nbs * cs) * (nbt * ct), 0.0);
    for (int q = 0; q < rule.size(); ++q) {
      const double w = rule.weights[q] * geom.detJ * coeff;
      const double* vt = bt_trial.values(q);
      const double* vs = bt_test.values(q);
      const bool need_gt = kind != BilinearKind::Mass && kind != BilinearKind::PressureDiv;
      const bool need_gs = kind == BilinearKind::Stiffness ||
                           kind == BilinearKind::DivDiv ||
                           kind == BilinearKind::PressureDiv;
      if (need_gt) bt_trial.grads(q, geom, gt);
      if (need_gs) bt_test.grads(q, geom, gs);

      switch (kind) {
        case BilinearKind::Mass:
          for (int i = 0; i < nbs; ++i)
            for (int j = 0; j < nbt; ++j) {
              const double v = w * vs[i] * vt[j];
              for (int c = 0; c < cs; ++c)
                local[(i * cs + c) * (nbt * ct) + j * ct + c] += v;
            }
          break;
        case BilinearKind::Stiffness:
          for (int i = 0; i < nbs; ++i)
            for (int j = 0; j < nbt; ++j) {
              double dot = 0.0;
              for (int a = 0; a < dim; ++a) dot += gs[i][a] * gt[j][a];
              const double v = w * dot;
              for (int c = 0; c < cs; ++c)
                local[(i * cs + c) * (nbt * ct) + j * ct + c] += v;
            }
          break;
        case BilinearKind::DivDiv:
          for (int i = 0; i < nbs; ++i)
            for (int ci = 0; ci < cs; ++ci)
              for (int j = 0; j < nbt; ++j)
                for (int cj = 0; cj < ct; ++cj)
                  local[(i * cs + ci) * (nbt * ct) + j * ct + cj] +=
                      w * gs[i][ci] * gt[j][cj];
          break;
        case BilinearKind::PressureDiv:
          for (int i = 0; i < nbs; ++i)
            for (int ci = 0; ci < cs; ++ci)
              for (int j = 0; j < nbt; ++j)
                local[(i * cs + ci) * nbt + j] += w * vt[j] * gs[i][ci];
          break;
        case BilinearKind::Grad:
          for (int i = 0; i < nbs; ++i)
            for (int ci = 0; ci < cs; ++ci)
              for (int j = 0; j < nbt; ++j)
                local[(i * cs + ci) * nbt + j] += w * gt[j][ci] * vs[i];
          break;
      }
    }
    for (int i = 0; i < nbs; ++i) {
      const int ni = test.cell_node(cell, i);
      for (int ci = 0; ci < cs; ++ci) {
        const int row = test.dof(ni, ci);
        for (int j = 0; j < nbt; ++j) {
          const int nj = trial.cell_node(cell, j);
          for (int cj = 0; cj < ct; ++cj)
            trips.push_back({row, trial.dof(nj, cj),
                             local[(i * cs + ci) * (nbt * ct) + j * ct + cj]});
        }
      }
    }
  }
  return SparseMatrix::from_triplets(test.n_dofs(), trial.n_dofs(), std::move(trips));
}

SparseMatrix assemble_convection(const Field& advecting,
                                 const FunctionSpace& trial,
                                 const FunctionSpace& test) {
  const FunctionSpace& adv_space = *advecting.space;
  check_same_mesh(adv_space, trial);
  check_same_mesh(trial, test);
  if (trial.components() != test.components() ||
      trial.family() != test.family())
    throw std::invalid_argument("convection needs identical trial/test spaces");
  if (adv_space.components() != trial.mesh().dim)
    throw std::invalid_argument("advecting field must be a velocity");

  const Mesh& mesh = trial.mesh();
  const int dim = mesh.dim;
  const QuadratureRule& rule =
      quadrature(dim, trilinear_quad_degree(adv_space, trial, test));
  BasisTable bt(trial.element(), rule);
  BasisTable bt_adv(adv_space.element(), rule);
  const int nb = trial.n_local_basis();
  const int nba = adv_space.n_local_basis();
  const int ncomp = trial.components();

  std::vector<Triplet> trips;
  trips.reserve(static_cast<size_t>(mesh.n_cells()) * nb * nb * ncomp);
  double g[kMaxBasis][3];
  std::vector<double> acoef(static_cast<size_t>(nba) * dim);

  for (int cell = 0; cell < mesh.n_cells(); ++cell) {
    const CellGeometry geom = CellGeometry::make(mesh, cell);
    for (int k = 0; k < nba; ++k) {
      const int node = adv_space.cell_node(cell, k);
      for (int c = 0; c < dim; ++c)
        acoef[k * dim + c] = advecting.coeffs[adv_space.dof(node, c)];
    }
    std::vector<double> plain(static_cast<size_t>(nb) * nb, 0.0);
    for (int q = 0; q < rule.size(); ++q) {
      const double w = rule.weights[q] * geom.detJ;
      const double* v = bt.values(q);
      bt.grads(q, geom, g);
      const double* va = bt_adv.values(q);
      double a[3] = {0.0, 0.0, 0.0};
      for (int k = 0; k < nba; ++k)
        for (int c = 0; c < dim; ++c) a[c] += acoef[k * dim + c] * va[k];
      for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j) {
          double adv = 0.0;
          for (int c = 0; c < dim; ++c) adv += a[c] * g[j][c];
          plain[i * nb + j] += w * v[i] * adv;
        }
    }
    // Antisymmetric part: exactly skew in floating point.
    for (int i = 0; i < nb; ++i) {
      const int ni = test.cell_node(cell, i);
      for (int j = 0; j < nb; ++j) {
        const int nj = trial.cell_node(cell, j);
        const double v = 0.5 * (plain[i * nb + j] - plain[j * nb + i]);
        for (int c = 0; c < ncomp; ++c)
          trips.push_back({test.dof(ni, c), trial.dof(nj, c), v});
      }
    }
  }
  return SparseMatrix::from_triplets(test.n_dofs(), trial.n_dofs(), std::move(trips));
}

SparseMatrix assemble_curl_coupling(const FunctionSpace& trial,
                                    const FunctionSpace& test,
                                    CurlDirection direction) {
  check_same_mesh(trial, test);
  const Mesh& mesh = trial.mesh();
  const int dim = mesh.dim;
  const FunctionSpace& vel = direction == CurlDirection::VelToAng ? trial : test;
  const FunctionSpace& ang = direction == CurlDirection::VelToAng ? test : trial;
  if (vel.components() != dim)
    throw std::invalid_argument("velocity side must have dim components");
  if (ang.components() != (dim == 2 ? 1 : 3))
    throw std::invalid_argument("angular side has wrong components");

  const QuadratureRule& rule = quadrature(dim, bilinear_quad_degree(trial, test));
  BasisTable bt_trial(trial.element(), rule);
  BasisTable bt_test(test.element(), rule);
  const int nbt = trial.n_local_basis();
  const int nbs = test.n_local_basis();
  const int ct = trial.components();
  const int cs = test.components();

  std::vector<Triplet> trips;
  double gt[kMaxBasis][3];
  // eps[a][b][c]: Levi-Civita, used for the 3D curl
  auto eps = [](int a, int b, int c) -> double {
    if (a == b || b == c || a == c) return 0.0;
    return ((b - a + 3) % 3 == 1 && (c - b + 3) % 3 == 1) ? 1.0 : -1.0;
  };

  for (int cell = 0; cell < mesh.n_cells(); ++cell) {
    const CellGeometry geom = CellGeometry::make(mesh, cell);
    std::vector<double> local(static_cast<size_t>(nbs * cs) * (nbt * ct), 0.0);
    for (int q = 0; q < rule.size(); ++q) {
      const double w = rule.weights[q] * geom.detJ;
      const double* vt = bt_trial.values(q);
      const double* vs = bt_test.values(q);
      bt_trial.grads(q, geom, gt);
      if (direction == CurlDirection::VelToAng) {
        // (curl u, zeta): trial velocity, test angular
        if (dim == 2) {
          // curl u = d u2/dx - d u1/dy
          for (int i = 0; i < nbs; ++i)
            for (int j = 0; j < nbt; ++j) {
              local[i * (nbt * ct) + j * ct + 0] += w * vs[i] * (-gt[j][1]);
              local[i * (nbt * ct) + j * ct + 1] += w * vs[i] * (gt[j][0]);
            }
        } else {
          for (int i = 0; i < nbs; ++i)
            for (int ci = 0; ci < 3; ++ci)
              for (int j = 0; j < nbt; ++j)
                for (int cj = 0; cj < 3; ++cj)
                  for (int b = 0; b < 3; ++b) {
                    const double e = eps(ci, b, cj);
                    if (e != 0.0)
                      local[(i * cs + ci) * (nbt * ct) + j * ct + cj] +=
                          w * e * gt[j][b] * vs[i];
                  }
        }
      } else {
        // (curl w, v): trial angular, test velocity
        if (dim == 2) {
          // curl w = (dw/dy, -dw/dx)
          for (int i = 0; i < nbs; ++i)
            for (int j = 0; j < nbt; ++j) {
              local[(i * cs + 0) * nbt + j] += w * gt[j][1] * vs[i];
              local[(i * cs + 1) * nbt + j] += w * (-gt[j][0]) * vs[i];
            }
        } else {
          for (int i = 0; i < nbs; ++i)
            for (int ci = 0; ci < 3; ++ci)
              for (int j = 0; j < nbt; ++j)
                for (int cj = 0; cj < 3; ++cj)
                  for (int b = 0; b < 3; ++b) {
                    const double e = eps(ci, b, cj);
                    if (e != 0.0)
                      local[(i * cs + ci) * (nbt * ct) + j * ct + cj] +=
                          w * e * gt[j][b] * vs[i];
                  }
        }
      }
    }
    for (int i = 0; i < nbs; ++i) {
      const int ni = test.cell_node(cell, i);
      for (int ci = 0; ci < cs; ++ci)
        for (int j = 0; j < nbt; ++j) {
          const int nj = trial.cell_node(cell, j);
          for (int cj = 0; cj < ct; ++cj)
            trips.push_back({test.dof(ni, ci), trial.dof(nj, cj),
                             local[(i * cs + ci) * (nbt * ct) + j * ct + cj]});
        }
    }
  }
  return SparseMatrix::from_triplets(test.n_dofs(), trial.n_dofs(), std::move(trips));
}

SparseMatrix assemble_thermal_curl(const Field& angular,
                                   const FunctionSpace& trial,
                                   const FunctionSpace& test) {
  const FunctionSpace& wsp = *angular.space;
  check_same_mesh(wsp, trial);
  check_same_mesh(trial, test);
  if (trial.components() != 1 || test.components() != 1)
    throw std::invalid_argument("thermal curl needs scalar spaces");

  const Mesh& mesh = trial.mesh();
  const int dim = mesh.dim;
  const QuadratureRule& rule = quadrature(dim, trilinear_quad_degree(wsp, trial, test));
  BasisTable bt(trial.element(), rule);
  BasisTable bt_test(test.element(), rule);
  BasisTable bt_w(wsp.element(), rule);
  const int nb = trial.n_local_basis();
  const int nbs = test.n_local_basis();
  const int nbw = wsp.n_local_basis();
  const int wc = wsp.components();

  std::vector<Triplet> trips;
  double g[kMaxBasis][3], gw[kMaxBasis][3];
  std::vector<double> wcoef(static_cast<size_t>(nbw) * wc);

  for (int cell = 0; cell < mesh.n_cells(); ++cell) {
    const CellGeometry geom = CellGeometry::make(mesh, cell);
    for (int k = 0; k < nbw; ++k) {
      const int node = wsp.cell_node(cell, k);
      for (int c = 0; c < wc; ++c) wcoef[k * wc + c] = angular.coeffs[wsp.dof(node, c)];
    }
    std::vector<double> local(static_cast<size_t>(nbs) * nb, 0.0);
    for (int q = 0; q < rule.size(); ++q) {
      const double w = rule.weights[q] * geom.detJ;
      const double* v = bt_test.values(q);
      bt.grads(q, geom, g);
      bt_w.grads(q, geom, gw);
      // curl of the angular field at the quadrature point
      double curl[3] = {0.0, 0.0, 0.0};
      if (dim == 2) {
        for (int k = 0; k < nbw; ++k) {
          curl[0] += wcoef[k] * gw[k][1];
          curl[1] -= wcoef[k] * gw[k][0];
        }
      } else {
        for (int k = 0; k < nbw; ++k) {
          curl[0] += wcoef[k * 3 + 2] * gw[k][1] - wcoef[k * 3 + 1] * gw[k][2];
          curl[1] += wcoef[k * 3 + 0] * gw[k][2] - wcoef[k * 3 + 2] * gw[k][0];
          curl[2] += wcoef[k * 3 + 1] * gw[k][0] - wcoef[k * 3 + 0] * gw[k][1];
        }
      }
      for (int i = 0; i < nbs; ++i)
        for (int j = 0; j < nb; ++j) {
          double dot = 0.0;
          for (int a = 0; a < dim; ++a) dot += curl[a] * g[j][a];
          local[i * nb + j] += w * v[i] * dot;
        }
    }
    for (int i = 0; i < nbs; ++i)
      for (int j = 0; j < nb; ++j)
        trips.push_back({test.cell_node(cell, i), trial.cell_node(cell, j),
                         local[i * nb + j]});
  }
  return SparseMatrix::from_triplets(test.n_dofs(), trial.n_dofs(), std::move(trips));
}

std::vector<double> assemble_functional(
    const FunctionSpace& test,
    const std::function<void(const IntegrandPoint&, double*)>& integrand,
    int quad_degree) {
  const Mesh& mesh = test.mesh();
  const int degree = quad_degree > 0 ? quad_degree : functional_quad_degree(test);
  const QuadratureRule& rule = quadrature(mesh.dim, degree);
  BasisTable bt(test.element(), rule);
  const int nb = test.n_local_basis();
  const int ncomp = test.components();

  std::vector<double> out(test.n_dofs(), 0.0);
  double fval[3];
  for (int cell = 0; cell < mesh.n_cells(); ++cell) {
    const CellGeometry geom = CellGeometry::make(mesh, cell);
    for (int q = 0; q < rule.size(); ++q) {
      const double w = rule.weights[q] * geom.detJ;
      const double* v = bt.values(q);
      IntegrandPoint ip{cell, geom.map(rule.points[q].data()), rule.points[q].data()};
      integrand(ip, fval);
      for (int i = 0; i < nb; ++i) {
        const int node = test.cell_node(cell, i);
        for (int c = 0; c < ncomp; ++c) out[test.dof(node, c)] += w * v[i] * fval[c];
      }
    }
  }
  return out;
}

void apply_dirichlet(SparseMatrix& A, std::vector<double>& rhs,
                     std::span<const int> dofs, std::span<const double> values) {
  if (A.rows != A.cols) throw std::invalid_argument("dirichlet needs a square system");
  std::vector<char> constrained(A.rows, 0);
  std::vector<double> value(A.rows, 0.0);
  for (size_t i = 0; i < dofs.size(); ++i) {
    if (dofs[i] < 0 || dofs[i] >= A.rows)
      throw std::invalid_argument("dirichlet dof out of range");
    constrained[dofs[i]] = 1;
    value[dofs[i]] = values[i];
  }
  for (int r = 0; r < A.rows; ++r) {
    for (int k = A.row_ptr[r]; k < A.row_ptr[r + 1]; ++k) {
      const int c = A.col_idx[k];
      if (constrained[r]) {
        A.vals[k] = (c == r) ? 1.0 : 0.0;
      } else if (constrained[c]) {
        rhs[r] -= A.vals[k] * value[c];
        A.vals[k] = 0.0;
      }
    }
  }
  for (size_t i = 0; i < dofs.size(); ++i) rhs[dofs[i]] = values[i];
}

double integrate(const Mesh& mesh, int quad_degree,
                 const std::function<double(const IntegrandPoint&)>& f) {
  const QuadratureRule& rule = quadrature(mesh.dim, quad_degree);
  double total = 0.0;
  for (int cell = 0; cell < mesh.n_cells(); ++cell) {
    const CellGeometry geom = CellGeometry::make(mesh, cell);
    for (int q = 0; q < rule.size(); ++q) {
      IntegrandPoint ip{cell, geom.map(rule.points[q].data()), rule.points[q].data()};
      total += rule.weights[q] * geom.detJ * f(ip);
    }
  }
  return total;
}

}  // namespace tmflow
