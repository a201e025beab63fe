#include <stdexcept>
#include <cmath>
#include <random>

#include "doctest.h"
#include "tmflow/assembly.hpp"
#include "tmflow/solver.hpp"
#include "tmflow/space.hpp"

using namespace tmflow;

TEST_CASE("triplet assembly accumulates duplicates") {
  std::vector<Triplet> t{{0, 1, 1.0}, {0, 1, 2.0}, {1, 0, -1.0}, {0, 0, 4.0}};
  SparseMatrix m = SparseMatrix::from_triplets(2, 2, t);
  CHECK(m.nnz() == 3);
  CHECK(m.vals[0] == 4.0);
  CHECK(m.vals[1] == 3.0);
  for (int r = 0; r < m.rows; ++r)
    for (int k = m.row_ptr[r] + 1; k < m.row_ptr[r + 1]; ++k)
      CHECK(m.col_idx[k] > m.col_idx[k - 1]);
}

TEST_CASE("transpose and weighted sum") {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> dist(-1, 1);
  std::vector<Triplet> t;
  for (int i = 0; i < 40; ++i)
    t.push_back({static_cast<int>(rng() % 7), static_cast<int>(rng() % 5), dist(rng)});
  SparseMatrix a = SparseMatrix::from_triplets(7, 5, t);
  SparseMatrix at = a.transposed();
  std::vector<double> x(5), y(7);
  for (auto& v : x) v = dist(rng);
  for (auto& v : y) v = dist(rng);
  // y' A x == x' A' y
  CHECK(a.quad_form(y, x) == doctest::Approx(at.quad_form(x, y)).epsilon(1e-14));

  std::vector<Triplet> t2{{0, 0, 1.0}, {6, 4, 2.0}};
  SparseMatrix b = SparseMatrix::from_triplets(7, 5, t2);
  SparseMatrix s = SparseMatrix::weighted_sum({{2.0, &a}, {-1.0, &b}});
  std::vector<double> ax = a.apply(x), bx = b.apply(x), sx = s.apply(x);
  for (int i = 0; i < 7; ++i)
    CHECK(sx[i] == doctest::Approx(2.0 * ax[i] - bx[i]).epsilon(1e-14));
}

TEST_CASE("dirichlet elimination matches the hand computation") {
  std::vector<Triplet> t{{0, 0, 2}, {0, 1, 1}, {1, 0, 1}, {1, 1, 3},
                         {1, 2, 1}, {2, 1, 1}, {2, 2, 4}};
  SparseMatrix a = SparseMatrix::from_triplets(3, 3, t);
  std::vector<double> rhs{1, 2, 3};
  const std::vector<int> dofs{1};
  const std::vector<double> vals{5.0};
  apply_dirichlet(a, rhs, dofs, vals);
  CHECK(rhs[0] == -4.0);
  CHECK(rhs[1] == 5.0);
  CHECK(rhs[2] == -2.0);
  std::vector<double> x{1.0, 1.0, 1.0};
  std::vector<double> y = a.apply(x);
  CHECK(y[0] == 2.0);  // row 0 reduced to diagonal
  CHECK(y[1] == 1.0);  // identity row
  CHECK(y[2] == 4.0);
}

TEST_CASE("symmetry survives elimination") {
  Mesh m = build_structured_mesh({0, 0, 0}, {1, 1, 0}, {3, 3, 1}, 2);
  FunctionSpace sp(m, Family::P1, 1);
  SparseMatrix a = assemble_bilinear(BilinearKind::Stiffness, sp, sp);
  std::vector<double> rhs(sp.n_dofs(), 1.0);
  auto bd = boundary_nodes(sp);
  std::vector<double> vals(bd.size(), 0.7);
  apply_dirichlet(a, rhs, bd, vals);
  SparseMatrix at = a.transposed();
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> dist(-1, 1);
  std::vector<double> x(sp.n_dofs()), y(sp.n_dofs());
  for (auto& v : x) v = dist(rng);
  for (auto& v : y) v = dist(rng);
  CHECK(a.quad_form(x, y) == doctest::Approx(at.quad_form(x, y)).epsilon(1e-13));
}

TEST_CASE("cg solves the identity in one iteration") {
  std::vector<Triplet> t;
  for (int i = 0; i < 6; ++i) t.push_back({i, i, 1.0});
  SparseMatrix eye = SparseMatrix::from_triplets(6, 6, t);
  std::vector<double> b{1, 2, 3, 4, 5, 6};
  std::vector<double> x(6, 0.0);
  SolverSpec spec;
  SolveReport rep = solve(eye, b, spec, x);
  CHECK(rep.converged);
  CHECK(rep.iterations <= 1);
  for (int i = 0; i < 6; ++i) CHECK(x[i] == doctest::Approx(b[i]).epsilon(1e-12));
}

TEST_CASE("stiffness system recovers a linear exact solution") {
  Mesh m = build_structured_mesh({0, 0, 0}, {1, 1, 0}, {8, 8, 1}, 2);
  FunctionSpace sp(m, Family::P1, 1);
  SparseMatrix a = assemble_bilinear(BilinearKind::Stiffness, sp, sp);
  std::vector<double> rhs(sp.n_dofs(), 0.0);
  auto exact = [](const Point& p) { return 2.0 * p[0] - 3.0 * p[1] + 0.5; };
  auto bd = boundary_nodes(sp);
  std::vector<double> vals;
  for (int node : bd) vals.push_back(exact(sp.node_point(node)));
  apply_dirichlet(a, rhs, bd, vals);
  std::vector<double> x(sp.n_dofs(), 0.0);
  SolverSpec spec;
  SolveReport rep = solve(a, rhs, spec, x);
  CHECK(rep.converged);
  CHECK(rep.rel_residual <= spec.rel_tol);
  for (int node = 0; node < sp.n_dofs(); ++node)
    CHECK(x[node] == doctest::Approx(exact(sp.node_point(node))).epsilon(1e-8));
}

TEST_CASE("pure neumann poisson with the constants nullspace") {
  Mesh m = build_structured_mesh({0, 0, 0}, {1, 1, 0}, {6, 6, 1}, 2);
  FunctionSpace sp(m, Family::P1, 1);
  SparseMatrix a = assemble_bilinear(BilinearKind::Stiffness, sp, sp);
  // compatible rhs: mean-zero data
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(-1, 1);
  std::vector<double> b(sp.n_dofs());
  for (auto& v : b) v = dist(rng);
  double mean = 0.0;
  for (double v : b) mean += v / b.size();
  for (auto& v : b) v -= mean;
  std::vector<double> x(sp.n_dofs(), 0.0);
  SolverSpec spec;
  spec.nullspace = Nullspace::Constants;
  SolveReport rep = solve(a, b, spec, x);
  CHECK(rep.converged);
  double xmean = 0.0;
  for (double v : x) xmean += v / x.size();
  CHECK(std::abs(xmean) < 1e-12);
}

TEST_CASE("bicgstab and gmres handle a nonsymmetric system") {
  Mesh m = build_structured_mesh({0, 0, 0}, {1, 1, 0}, {6, 6, 1}, 2);
  FunctionSpace sp(m, Family::P1, 1);
  FunctionSpace vel(m, Family::P1Bubble, 2);
  Field adv = interpolate(vel, [](const Point& p, int c) {
    return c == 0 ? 1.0 + p[1] : 0.5 - p[0];
  });
  SparseMatrix mass = assemble_bilinear(BilinearKind::Mass, sp, sp);
  SparseMatrix stiff = assemble_bilinear(BilinearKind::Stiffness, sp, sp);
  SparseMatrix conv = assemble_convection(adv, sp, sp);
  SparseMatrix a =
      SparseMatrix::weighted_sum({{10.0, &mass}, {1.0, &stiff}, {1.0, &conv}});
  std::vector<double> b(sp.n_dofs(), 1.0);
  for (KrylovMethod method : {KrylovMethod::BiCGStab, KrylovMethod::GMRES}) {
    std::vector<double> x(sp.n_dofs(), 0.0);
    SolverSpec spec;
    spec.method = method;
    SolveReport rep = solve(a, b, spec, x);
    CHECK(rep.converged);
    CHECK(rep.rel_residual <= spec.rel_tol);
  }
}
