#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "tmflow/assembly.hpp"
#include "tmflow/elements.hpp"
#include "tmflow/errors.hpp"
#include "tmflow/quadrature.hpp"

using namespace tmflow;

TEST_CASE("P1 values at the barycenter") {
  ReferenceElement p1(Family::P1, 2);
  const double bary[3] = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  double v[3];
  p1.eval(bary, v);
  for (int i = 0; i < 3; ++i) CHECK(v[i] == doctest::Approx(1.0 / 3).epsilon(1e-15));
}

TEST_CASE("bubble normalization") {
  for (int dim : {2, 3}) {
    ReferenceElement el(Family::P1Bubble, dim);
    std::array<double, 4> c{};
    for (int i = 0; i <= dim; ++i) c[i] = 1.0 / (dim + 1);
    std::vector<double> v(el.n_basis());
    el.eval(c.data(), v.data());
    CHECK(v[el.n_basis() - 1] == doctest::Approx(1.0).epsilon(1e-14));
    for (int vtx = 0; vtx <= dim; ++vtx) {
      std::array<double, 4> e{};
      e[vtx] = 1.0;
      el.eval(e.data(), v.data());
      CHECK(v[el.n_basis() - 1] == 0.0);
    }
  }
}

TEST_CASE("P2 Kronecker at an edge midpoint") {
  ReferenceElement p2(Family::P2, 2);
  // first edge's midpoint: basis 3 is one, all others vanish
  const auto bary = p2.dof_bary(3);
  double v[6];
  p2.eval(bary.data(), v);
  for (int i = 0; i < 6; ++i)
    CHECK(v[i] == doctest::Approx(i == 3 ? 1.0 : 0.0).epsilon(1e-15));
}

TEST_CASE("eval_basis validates the point") {
  ReferenceElement p1(Family::P1, 2);
  const std::vector<double> bad{0.5, 0.2, 0.2};
  CHECK_THROWS_AS((void)eval_basis(p1, bad), std::invalid_argument);
  const std::vector<double> good{0.5, 0.3, 0.2};
  CHECK(eval_basis(p1, good).size() == 3);
}

TEST_CASE("P1 gradients on the reference triangle") {
  Mesh ref;
  ref.dim = 2;
  ref.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  ref.cells = {{0, 1, 2, -1}};
  const CellGeometry geom = CellGeometry::make(ref, 0);
  ReferenceElement p1(Family::P1, 2);
  const double bary[3] = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  double g[10][3];
  eval_grad_basis(p1, bary, geom, g);
  CHECK(g[0][0] == doctest::Approx(-1.0));
  CHECK(g[0][1] == doctest::Approx(-1.0));
  CHECK(g[1][0] == doctest::Approx(1.0));
  CHECK(g[1][1] == doctest::Approx(0.0));
  CHECK(g[2][0] == doctest::Approx(0.0));
  CHECK(g[2][1] == doctest::Approx(1.0));
  // partition of unity: gradients sum to zero
  for (int a = 0; a < 2; ++a)
    CHECK(g[0][a] + g[1][a] + g[2][a] == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("degenerate cells are rejected") {
  Mesh bad;
  bad.dim = 2;
  bad.vertices = {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}};
  bad.cells = {{0, 1, 2, -1}};
  CHECK_THROWS_AS(CellGeometry::make(bad, 0), SingularGeometry);
}

TEST_CASE("quadrature basics") {
  const QuadratureRule& r1 = quadrature(2, 1);
  CHECK(r1.size() == 1);
  CHECK(r1.weights[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r1.points[0][0] == doctest::Approx(1.0 / 3).epsilon(1e-15));

  // x^2 y over the reference triangle
  const QuadratureRule& r3 = quadrature(2, 3);
  double s = 0.0;
  for (int q = 0; q < r3.size(); ++q)
    s += r3.weights[q] * r3.points[q][1] * r3.points[q][1] * r3.points[q][2];
  CHECK(s == doctest::Approx(1.0 / 60).epsilon(1e-13));

  // x y over the reference tetrahedron
  const QuadratureRule& t2 = quadrature(3, 2);
  s = 0.0;
  for (int q = 0; q < t2.size(); ++q)
    s += t2.weights[q] * t2.points[q][1] * t2.points[q][2];
  CHECK(s == doctest::Approx(1.0 / 120).epsilon(1e-13));

  CHECK_THROWS_AS(quadrature(2, 0), std::invalid_argument);
  CHECK_THROWS_AS(quadrature(2, 31), UnsupportedFeature);
}

TEST_CASE("weights sum to the reference volume") {
  for (int dim : {2, 3})
    for (int deg = 1; deg <= (dim == 2 ? 9 : 8); ++deg) {
      const QuadratureRule& r = quadrature(dim, deg);
      double s = 0.0;
      for (double w : r.weights) s += w;
      CHECK(s == doctest::Approx(dim == 2 ? 0.5 : 1.0 / 6).epsilon(1e-14));
    }
}
