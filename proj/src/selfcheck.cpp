#include "tmflow/selfcheck.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "tmflow/scheme.hpp"

namespace tmflow {

namespace {

double dense_entry_max(const DenseMatrix& d) {
  double m = 0.0;
  for (const auto& row : d)
    for (double v : row) m = std::max(m, std::abs(v));
  return m;
}

double sparse_vs_dense(const SparseMatrix& s, const DenseMatrix& d) {
  DenseMatrix full(s.rows, std::vector<double>(s.cols, 0.0));
  for (int r = 0; r < s.rows; ++r)
    for (int k = s.row_ptr[r]; k < s.row_ptr[r + 1]; ++k)
      full[r][s.col_idx[k]] = s.vals[k];
  double worst = 0.0;
  for (int r = 0; r < s.rows; ++r)
    for (int c = 0; c < s.cols; ++c)
      worst = std::max(worst, std::abs(full[r][c] - d[r][c]));
  return worst;
}

char detail_buf[256];

const char* fmt(const char* pattern, double a, double b = 0.0) {
  std::snprintf(detail_buf, sizeof(detail_buf), pattern, a, b);
  return detail_buf;
}

}  // namespace

DenseMatrix dense_bilinear(BilinearKind kind, const FunctionSpace& trial,
                           const FunctionSpace& test, double coeff) {
  const Mesh& mesh = trial.mesh();
  const int dim = mesh.dim;
  DenseMatrix out(test.n_dofs(), std::vector<double>(trial.n_dofs(), 0.0));
  const QuadratureRule& rule = quadrature(dim, bilinear_quad_degree(trial, test));
  const auto& et = trial.element();
  const auto& es = test.element();
  std::vector<double> vt(et.n_basis()), vs(es.n_basis());
  double gt[10][3], gs[10][3];
  for (int cell = 0; cell < mesh.n_cells(); ++cell) {
    const CellGeometry geom = CellGeometry::make(mesh, cell);
    for (int q = 0; q < rule.size(); ++q) {
      const double* bary = rule.points[q].data();
      const double w = rule.weights[q] * geom.detJ * coeff;
      et.eval(bary, vt.data());
      es.eval(bary, vs.data());
      eval_grad_basis(et, bary, geom, gt);
      eval_grad_basis(es, bary, geom, gs);
      for (int i = 0; i < es.n_basis(); ++i)
        for (int ci = 0; ci < test.components(); ++ci) {
          const int row = test.dof(test.cell_node(cell, i), ci);
          for (int j = 0; j < et.n_basis(); ++j)
            for (int cj = 0; cj < trial.components(); ++cj) {
              const int col = trial.dof(trial.cell_node(cell, j), cj);
              double v = 0.0;
              switch (kind) {
                case BilinearKind::Mass:
                  if (ci == cj) v = vs[i] * vt[j];
                  break;
                case BilinearKind::Stiffness:
                  if (ci == cj)
                    for (int a = 0; a < dim; ++a) v += gs[i][a] * gt[j][a];
                  break;
                case BilinearKind::DivDiv:
                  v = gs[i][ci] * gt[j][cj];
                  break;
                case BilinearKind::PressureDiv:
                  v = vt[j] * gs[i][ci];
                  break;
                case BilinearKind::Grad:
                  v = gt[j][ci] * vs[i];
                  break;
              }
              out[row][col] += w * v;
            }
        }
    }
  }
  return out;
}

DenseMatrix dense_convection(const Field& advecting, const FunctionSpace& trial,
                             const FunctionSpace& test) {
  const Mesh& mesh = trial.mesh();
  const int dim = mesh.dim;
  const FunctionSpace& asp = *advecting.space;
  DenseMatrix plain(test.n_dofs(), std::vector<double>(trial.n_dofs(), 0.0));
  const QuadratureRule& rule =
      quadrature(dim, trilinear_quad_degree(asp, trial, test));
  const auto& el = trial.element();
  std::vector<double> v(el.n_basis());
  double g[10][3];
  for (int cell = 0; cell < mesh.n_cells(); ++cell) {
    const CellGeometry geom = CellGeometry::make(mesh, cell);
    for (int q = 0; q < rule.size(); ++q) {
      const double* bary = rule.points[q].data();
      const double w = rule.weights[q] * geom.detJ;
      el.eval(bary, v.data());
      eval_grad_basis(el, bary, geom, g);
      double a[3] = {0.0, 0.0, 0.0};
      for (int c = 0; c < dim; ++c) a[c] = advecting.eval(cell, bary, c);
      for (int i = 0; i < el.n_basis(); ++i)
        for (int j = 0; j < el.n_basis(); ++j) {
          double adv = 0.0;
          for (int c = 0; c < dim; ++c) adv += a[c] * g[j][c];
          for (int cc = 0; cc < trial.components(); ++cc) {
            const int row = test.dof(test.cell_node(cell, i), cc);
            const int col = trial.dof(trial.cell_node(cell, j), cc);
            plain[row][col] += w * v[i] * adv;
          }
        }
    }
  }
  DenseMatrix out(plain.size(), std::vector<double>(plain.size(), 0.0));
  for (size_t i = 0; i < plain.size(); ++i)
    for (size_t j = 0; j < plain.size(); ++j)
      out[i][j] = 0.5 * (plain[i][j] - plain[j][i]);
  return out;
}

DenseMatrix dense_curl_coupling(const FunctionSpace& trial,
                                const FunctionSpace& test, CurlDirection dir) {
  const Mesh& mesh = trial.mesh();
  const int dim = mesh.dim;
  DenseMatrix out(test.n_dofs(), std::vector<double>(trial.n_dofs(), 0.0));
  const QuadratureRule& rule = quadrature(dim, bilinear_quad_degree(trial, test));
  const auto& et = trial.element();
  const auto& es = test.element();
  std::vector<double> vt(et.n_basis()), vs(es.n_basis());
  double gt[10][3];
  auto eps = [](int a, int b, int c) -> double {
    if (a == b || b == c || a == c) return 0.0;
    return ((b - a + 3) % 3 == 1 && (c - b + 3) % 3 == 1) ? 1.0 : -1.0;
  };
  for (int cell = 0; cell < mesh.n_cells(); ++cell) {
    const CellGeometry geom = CellGeometry::make(mesh, cell);
    for (int q = 0; q < rule.size(); ++q) {
      const double* bary = rule.points[q].data();
      const double w = rule.weights[q] * geom.detJ;
      et.eval(bary, vt.data());
      es.eval(bary, vs.data());
      eval_grad_basis(et, bary, geom, gt);
      for (int i = 0; i < es.n_basis(); ++i)
        for (int ci = 0; ci < test.components(); ++ci) {
          const int row = test.dof(test.cell_node(cell, i), ci);
          for (int j = 0; j < et.n_basis(); ++j)
            for (int cj = 0; cj < trial.components(); ++cj) {
              const int col = trial.dof(trial.cell_node(cell, j), cj);
              double val = 0.0;
              if (dir == CurlDirection::VelToAng) {
                if (dim == 2)
                  val = (cj == 1 ? gt[j][0] : -gt[j][1]) * vs[i];
                else
                  for (int b = 0; b < 3; ++b) val += eps(ci, b, cj) * gt[j][b] * vs[i];
              } else {
                if (dim == 2)
                  val = (ci == 0 ? gt[j][1] : -gt[j][0]) * vs[i];
                else
                  for (int b = 0; b < 3; ++b) val += eps(ci, b, cj) * gt[j][b] * vs[i];
              }
              out[row][col] += w * val;
            }
        }
    }
  }
  return out;
}

DenseMatrix dense_thermal_curl(const Field& angular, const FunctionSpace& trial,
                               const FunctionSpace& test) {
  const Mesh& mesh = trial.mesh();
  const int dim = mesh.dim;
  const FunctionSpace& wsp = *angular.space;
  DenseMatrix out(test.n_dofs(), std::vector<double>(trial.n_dofs(), 0.0));
  const QuadratureRule& rule =
      quadrature(dim, trilinear_quad_degree(wsp, trial, test));
  const auto& el = trial.element();
  const auto& ew = wsp.element();
  std::vector<double> v(el.n_basis());
  double g[10][3], gw[10][3];
  for (int cell = 0; cell < mesh.n_cells(); ++cell) {
    const CellGeometry geom = CellGeometry::make(mesh, cell);
    for (int q = 0; q < rule.size(); ++q) {
      const double* bary = rule.points[q].data();
      const double w = rule.weights[q] * geom.detJ;
      el.eval(bary, v.data());
      eval_grad_basis(el, bary, geom, g);
      eval_grad_basis(ew, bary, geom, gw);
      double curl[3] = {0.0, 0.0, 0.0};
      for (int k = 0; k < ew.n_basis(); ++k) {
        const int node = wsp.cell_node(cell, k);
        if (dim == 2) {
          const double c = angular.coeffs[wsp.dof(node, 0)];
          curl[0] += c * gw[k][1];
          curl[1] -= c * gw[k][0];
        } else {
          const double c0 = angular.coeffs[wsp.dof(node, 0)];
          const double c1 = angular.coeffs[wsp.dof(node, 1)];
          const double c2 = angular.coeffs[wsp.dof(node, 2)];
          curl[0] += c2 * gw[k][1] - c1 * gw[k][2];
          curl[1] += c0 * gw[k][2] - c2 * gw[k][0];
          curl[2] += c1 * gw[k][0] - c0 * gw[k][1];
        }
      }
      for (int i = 0; i < el.n_basis(); ++i)
        for (int j = 0; j < el.n_basis(); ++j) {
          double dot = 0.0;
          for (int a = 0; a < dim; ++a) dot += curl[a] * g[j][a];
          out[test.cell_node(cell, i)][trial.cell_node(cell, j)] += w * v[i] * dot;
        }
    }
  }
  return out;
}

namespace {

void check_quadrature(std::vector<CheckResult>& out) {
  double worst = 0.0;
  for (int dim = 2; dim <= 3; ++dim) {
    const int top = dim == 2 ? 8 : 7;
    for (int deg = 1; deg <= top; ++deg) {
      const QuadratureRule& r = quadrature(dim, deg);
      double wsum = 0.0;
      for (double w : r.weights) wsum += w;
      worst = std::max(worst, std::abs(wsum - (dim == 2 ? 0.5 : 1.0 / 6.0)));
      for (int a = 0; a + 0 <= r.exactness_degree; ++a)
        for (int b = 0; a + b <= r.exactness_degree; ++b)
          for (int c = 0; a + b + c <= r.exactness_degree && (dim == 3 || c == 0); ++c) {
            double s = 0.0;
            for (int q = 0; q < r.size(); ++q) {
              const auto& l = r.points[q];
              // x = l1, y = l2, z = l3 on the reference simplex
              s += r.weights[q] * std::pow(l[1], a) * std::pow(l[2], b) *
                   std::pow(l[3], c);
            }
            const double ref = simplex_monomial_integral(dim, a, b, c);
            worst = std::max(worst, std::abs(s - ref) / std::max(ref, 1e-30));
          }
    }
  }
  out.push_back({"quadrature monomial exactness", worst < 1e-12,
                 fmt("max rel err %.2e", worst)});
}

void check_elements(std::vector<CheckResult>& out) {
  double worst = 0.0;
  for (int dim = 2; dim <= 3; ++dim)
    for (Family fam : {Family::P1, Family::P2, Family::P1Bubble}) {
      ReferenceElement el(fam, dim);
      std::vector<double> v(el.n_basis());
      for (int i = 0; i < el.n_basis(); ++i) {
        const auto b = el.dof_bary(i);
        el.eval(b.data(), v.data());
        for (int j = 0; j < el.n_basis(); ++j) {
          // the bubble vanishes at the P1 nodes but P1 values are nonzero
          // at the barycenter, so only enforce the square Kronecker part
          // for the nodal families and the bubble row itself
          double expect = (i == j) ? 1.0 : 0.0;
          if (fam == Family::P1Bubble && j < dim + 1 && i == el.n_basis() - 1)
            expect = 1.0 / (dim + 1);
          worst = std::max(worst, std::abs(v[j] - expect));
        }
      }
    }
  out.push_back({"reference element nodal values", worst < 1e-14,
                 fmt("max err %.2e", worst)});

  // partition of unity for the nodal families at random points
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  double pu = 0.0;
  for (int dim = 2; dim <= 3; ++dim)
    for (Family fam : {Family::P1, Family::P2}) {
      ReferenceElement el(fam, dim);
      std::vector<double> v(el.n_basis());
      for (int trial = 0; trial < 20; ++trial) {
        std::array<double, 4> l{0, 0, 0, 0};
        double sum = 0.0;
        for (int i = 0; i <= dim; ++i) sum += (l[i] = dist(rng));
        for (int i = 0; i <= dim; ++i) l[i] /= sum;
        el.eval(l.data(), v.data());
        double s = 0.0;
        for (double x : v) s += x;
        pu = std::max(pu, std::abs(s - 1.0));
      }
    }
  out.push_back({"partition of unity", pu < 1e-13, fmt("max err %.2e", pu)});
}

void check_gradients(std::vector<CheckResult>& out) {
  // analytic gradients vs centred differences on a stretched cell
  Mesh mesh2 = build_structured_mesh({0, 0, 0}, {1.3, 0.7, 0}, {1, 1, 1}, 2);
  Mesh mesh3 = build_structured_mesh({0, 0, 0}, {1.1, 0.9, 1.4}, {1, 1, 1}, 3);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(0.05, 0.3);
  double worst = 0.0;
  for (const Mesh* mesh : {&mesh2, &mesh3}) {
    const int dim = mesh->dim;
    for (Family fam : {Family::P1, Family::P2, Family::P1Bubble}) {
      ReferenceElement el(fam, dim);
      const CellGeometry geom = CellGeometry::make(*mesh, 0);
      std::vector<double> vp(el.n_basis()), vm(el.n_basis());
      double g[10][3];
      for (int trial = 0; trial < 20; ++trial) {
        std::array<double, 4> l{0, 0, 0, 0};
        double rest = 1.0;
        for (int i = 1; i <= dim; ++i) {
          l[i] = dist(rng);
          rest -= l[i];
        }
        l[0] = rest;
        eval_grad_basis(el, l.data(), geom, g);
        const Point x = geom.map(l.data());
        const double h = 1e-6;
        for (int a = 0; a < dim; ++a) {
          Point xp = x, xm = x;
          xp[a] += h;
          xm[a] -= h;
          const auto lp = barycentric(*mesh, 0, xp);
          const auto lm = barycentric(*mesh, 0, xm);
          el.eval(lp.data(), vp.data());
          el.eval(lm.data(), vm.data());
          for (int k = 0; k < el.n_basis(); ++k) {
            const double fd = (vp[k] - vm[k]) / (2.0 * h);
            worst = std::max(worst, std::abs(fd - g[k][a]));
          }
        }
      }
    }
  }
  out.push_back({"gradients vs finite differences", worst < 1e-6,
                 fmt("max err %.2e", worst)});
}

void check_dense_equivalence(std::vector<CheckResult>& out) {
  Mesh mesh2 = build_structured_mesh({0, 0, 0}, {1, 1, 0}, {2, 2, 1}, 2);
  Mesh mesh3 = build_structured_mesh({0, 0, 0}, {1, 1, 1}, {1, 1, 1}, 3);
  double worst = 0.0;
  for (const Mesh* mesh : {&mesh2, &mesh3}) {
    const int dim = mesh->dim;
    for (Family fam : {Family::P1, Family::P2, Family::P1Bubble}) {
      FunctionSpace vec(*mesh, fam, dim);
      FunctionSpace scal(*mesh, fam, 1);
      FunctionSpace prs(*mesh, Family::P1, 1);
      FunctionSpace ang(*mesh, fam, dim == 2 ? 1 : 3);

      auto cmp = [&](const SparseMatrix& s, const DenseMatrix& d) {
        const double scale = std::max(dense_entry_max(d), 1e-30);
        worst = std::max(worst, sparse_vs_dense(s, d) / scale);
      };
      cmp(assemble_bilinear(BilinearKind::Mass, vec, vec, 2.5),
          dense_bilinear(BilinearKind::Mass, vec, vec, 2.5));
      cmp(assemble_bilinear(BilinearKind::Stiffness, scal, scal),
          dense_bilinear(BilinearKind::Stiffness, scal, scal));
      cmp(assemble_bilinear(BilinearKind::DivDiv, vec, vec),
          dense_bilinear(BilinearKind::DivDiv, vec, vec));
      cmp(assemble_bilinear(BilinearKind::PressureDiv, prs, vec),
          dense_bilinear(BilinearKind::PressureDiv, prs, vec));
      cmp(assemble_bilinear(BilinearKind::Grad, prs, vec),
          dense_bilinear(BilinearKind::Grad, prs, vec));

      // smooth advecting field
      FunctionSpace adv_sp(*mesh, fam, dim);
      Field adv = interpolate(adv_sp, [dim](const Point& p, int c) {
        if (c == 0) return p[1] * p[1] + 0.3;
        if (c == 1) return p[0] - 0.2 * p[1];
        return 0.1 * p[0] * p[1];
      });
      cmp(assemble_convection(adv, vec, vec), dense_convection(adv, vec, vec));
      cmp(assemble_curl_coupling(vec, ang, CurlDirection::VelToAng),
          dense_curl_coupling(vec, ang, CurlDirection::VelToAng));
      cmp(assemble_curl_coupling(ang, vec, CurlDirection::AngToVel),
          dense_curl_coupling(ang, vec, CurlDirection::AngToVel));

      Field wfield = interpolate(ang, [dim](const Point& p, int c) {
        if (c == 0) return p[0] * p[0] - p[1];
        if (c == 1) return p[1] * p[2] + 0.4;
        return p[0] + p[2] * p[2];
      });
      cmp(assemble_thermal_curl(wfield, scal, scal),
          dense_thermal_curl(wfield, scal, scal));
    }
  }
  out.push_back({"sparse vs dense brute-force assembly", worst < 1e-13,
                 fmt("max rel err %.2e", worst)});
}

void check_convection_skew(std::vector<CheckResult>& out) {
  Mesh mesh = build_structured_mesh({0, 0, 0}, {1, 1, 0}, {4, 4, 1}, 2);
  Mesh mesh3 = build_structured_mesh({0, 0, 0}, {1, 1, 1}, {2, 2, 2}, 3);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double worst = 0.0;
  for (const Mesh* m : {&mesh, &mesh3}) {
    for (Family fam : {Family::P1Bubble, Family::P2}) {
      FunctionSpace vec(*m, fam, m->dim);
      Field adv(vec);
      for (double& v : adv.coeffs) v = dist(rng);
      SparseMatrix N = assemble_convection(adv, vec, vec);
      double scale = 0.0;
      for (double v : N.vals) scale = std::max(scale, std::abs(v));
      scale = std::max(scale, 1e-30);
      for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> x(vec.n_dofs());
        for (double& v : x) v = dist(rng);
        const double q = N.quad_form(x, x);
        double xn = 0.0;
        for (double v : x) xn += v * v;
        worst = std::max(worst, std::abs(q) / (scale * xn));
      }
    }
  }
  out.push_back({"convection skew symmetry", worst < 1e-13,
                 fmt("max |x'Nx| %.2e", worst)});
}

void check_orthogonality(std::vector<CheckResult>& out) {
  // |grad v|^2 = |div v|^2 + |curl v|^2 for discrete fields vanishing on
  // the boundary, via independent elementwise quadrature.
  double worst = 0.0;
  for (int dim = 2; dim <= 3; ++dim) {
    Mesh mesh = build_structured_mesh({0, 0, 0}, {1, 1, 1},
                                      {dim == 2 ? 6 : 3, dim == 2 ? 6 : 3, 3}, dim);
    FunctionSpace vec(mesh, Family::P2, dim);
    Field v(vec);
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (double& x : v.coeffs) x = dist(rng);
    for (int node : boundary_nodes(vec))
      for (int c = 0; c < dim; ++c) v.coeffs[vec.dof(node, c)] = 0.0;

    SparseMatrix S = assemble_bilinear(BilinearKind::Stiffness, vec, vec);
    const double grad2 = S.quad_form(v.coeffs, v.coeffs);

    const auto& el = vec.element();
    double div2 = 0.0, curl2 = 0.0;
    const QuadratureRule& rule = quadrature(dim, 2 * el.poly_degree());
    double g[10][3];
    for (int cell = 0; cell < mesh.n_cells(); ++cell) {
      const CellGeometry geom = CellGeometry::make(mesh, cell);
      for (int q = 0; q < rule.size(); ++q) {
        const double w = rule.weights[q] * geom.detJ;
        eval_grad_basis(el, rule.points[q].data(), geom, g);
        double J[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
        for (int k = 0; k < el.n_basis(); ++k) {
          const int node = vec.cell_node(cell, k);
          for (int c = 0; c < dim; ++c)
            for (int a = 0; a < dim; ++a)
              J[c][a] += v.coeffs[vec.dof(node, c)] * g[k][a];
        }
        double div = 0.0;
        for (int c = 0; c < dim; ++c) div += J[c][c];
        div2 += w * div * div;
        if (dim == 2) {
          const double cz = J[1][0] - J[0][1];
          curl2 += w * cz * cz;
        } else {
          const double cx = J[2][1] - J[1][2];
          const double cy = J[0][2] - J[2][0];
          const double cz = J[1][0] - J[0][1];
          curl2 += w * (cx * cx + cy * cy + cz * cz);
        }
      }
    }
    worst = std::max(worst, std::abs(grad2 - div2 - curl2) / std::max(grad2, 1e-30));
  }
  out.push_back({"grad = div + curl orthogonality", worst < 1e-11,
                 fmt("max rel err %.2e", worst)});
}

void check_projection(std::vector<CheckResult>& out) {
  Mesh mesh = build_structured_mesh({0, 0, 0}, {1, 1, 0}, {8, 8, 1}, 2);
  PhysicalParams params;
  SchemeConfig config;
  config.scheme = SchemeKind::RPC1;
  config.elements = ElementPair::P1B_P1;
  config.tau = 0.01;
  config.t_end = 0.01;
  config.energy_monitor = false;
  ProblemDef def;  // homogeneous
  ProjectionScheme scheme(mesh, params, config, def);
  State s = scheme.initial_state();
  Field ut = interpolate(scheme.velocity_space(), [](const Point& p, int c) {
    const double sx = std::sin(M_PI * p[0]), sy = std::sin(M_PI * p[1]);
    return c == 0 ? sx * sx * sy : -sx * sy * sy;
  });
  for (int node : boundary_nodes(scheme.velocity_space()))
    for (int c = 0; c < 2; ++c) ut.coeffs[scheme.velocity_space().dof(node, c)] = 0.0;
  auto proj = scheme.projection_step(ut.coeffs, s, true, ProjectionScheme::bdf1(),
                                     config.tau, config.tau, 0);
  const bool div_ok = proj.div_residual <= 10.0 * config.solver_rel_tol;
  out.push_back({"weak divergence-free projection", div_ok,
                 fmt("residual %.2e", proj.div_residual)});
  const double pmean = scheme.pressure_mean(proj.p);
  out.push_back({"zero-mean pressure", std::abs(pmean) < 1e-12,
                 fmt("|mean| %.2e", std::abs(pmean))});
}

void check_zero_run(std::vector<CheckResult>& out) {
  Mesh mesh = build_structured_mesh({0, 0, 0}, {1, 1, 0}, {4, 4, 1}, 2);
  PhysicalParams params;
  SchemeConfig config;
  config.scheme = SchemeKind::SPC1;
  config.elements = ElementPair::P1B_P1;
  config.tau = 0.01;
  config.t_end = 1.0;  // 100 steps
  config.energy_monitor = false;
  ProblemDef def;
  ProjectionScheme scheme(mesh, params, config, def);
  TransientResult res = scheme.run_transient();
  double worst = 0.0;
  for (const auto* f : {&res.state.u, &res.state.p, &res.state.w, &res.state.T})
    for (double v : *f) worst = std::max(worst, std::abs(v));
  out.push_back({"zero-data run stays exactly zero", worst == 0.0,
                 fmt("max |field| %.2e", worst)});
}

void check_dirichlet(std::vector<CheckResult>& out) {
  // 3-dof elimination against the hand-computed result
  std::vector<Triplet> t{{0, 0, 2}, {0, 1, 1}, {1, 0, 1}, {1, 1, 3},
                         {1, 2, 1}, {2, 1, 1}, {2, 2, 4}};
  SparseMatrix A = SparseMatrix::from_triplets(3, 3, t);
  std::vector<double> rhs{1.0, 2.0, 3.0};
  std::vector<int> dofs{1};
  std::vector<double> vals{5.0};
  apply_dirichlet(A, rhs, dofs, vals);
  DenseMatrix expect{{2, 0, 0}, {0, 1, 0}, {0, 0, 4}};
  std::vector<double> erhs{-4.0, 5.0, -2.0};
  double worst = sparse_vs_dense(A, expect);
  for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(rhs[i] - erhs[i]));
  out.push_back({"dirichlet elimination", worst == 0.0, fmt("max err %.2e", worst)});
}

}  // namespace

std::vector<CheckResult> run_self_checks() {
  std::vector<CheckResult> out;
  check_quadrature(out);
  check_elements(out);
  check_gradients(out);
  check_dense_equivalence(out);
  check_convection_skew(out);
  check_orthogonality(out);
  check_projection(out);
  check_zero_run(out);
  check_dirichlet(out);
  return out;
}

}  // namespace tmflow
