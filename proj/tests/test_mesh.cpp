#include <stdexcept>
#include <cmath>
#include <set>

#include "doctest.h"
#include "tmflow/mesh.hpp"
#include "tmflow/space.hpp"

using namespace tmflow;

TEST_CASE("structured mesh counts") {
  Mesh m1 = build_structured_mesh({0, 0, 0}, {1, 1, 0}, {1, 1, 1}, 2);
  CHECK(m1.n_vertices() == 4);
  CHECK(m1.n_cells() == 2);
  CHECK(m1.boundary_facets.size() == 4);

  Mesh m10 = build_structured_mesh({0, 0, 0}, {1, 1, 0}, {10, 10, 1}, 2);
  CHECK(m10.n_vertices() == 121);
  CHECK(m10.n_cells() == 200);
  CHECK(m10.h == doctest::Approx(std::sqrt(2.0) / 10).epsilon(1e-14));

  Mesh c2 = build_structured_mesh({0, 0, 0}, {1, 1, 1}, {2, 2, 2}, 3);
  CHECK(c2.n_vertices() == 27);
  CHECK(c2.n_cells() == 48);
}

TEST_CASE("bad arguments rejected") {
  CHECK_THROWS_AS(build_structured_mesh({0, 0, 0}, {1, 1, 0}, {0, 1, 1}, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_structured_mesh({0, 0, 0}, {-1, 1, 0}, {2, 2, 1}, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_structured_mesh({0, 0, 0}, {1, 1, 1}, {2, 2, 2}, 4),
                  std::invalid_argument);
}

TEST_CASE("cell volumes fill the box") {
  Mesh m = build_structured_mesh({-1, 2, 0}, {3, 5, 0}, {7, 3, 1}, 2);
  double vol = 0.0;
  for (int c = 0; c < m.n_cells(); ++c) vol += m.cell_volume(c);
  CHECK(vol == doctest::Approx(m.domain_volume()).epsilon(1e-12));

  Mesh m3 = build_structured_mesh({0, 0, 0}, {2, 1, 3}, {3, 2, 4}, 3);
  vol = 0.0;
  for (int c = 0; c < m3.n_cells(); ++c) vol += m3.cell_volume(c);
  CHECK(vol == doctest::Approx(m3.domain_volume()).epsilon(1e-12));
}

TEST_CASE("interior facets are oppositely oriented") {
  for (int dim : {2, 3}) {
    Mesh m = build_structured_mesh({0, 0, 0}, {1, 1, 1}, {2, 3, 2}, dim);
    for (const auto& rec : collect_facets(m)) {
      if (rec.uses.size() == 1) continue;
      REQUIRE(rec.uses.size() == 2);
      const auto& a = rec.uses[0].ordered;
      const auto& b = rec.uses[1].ordered;
      if (dim == 2) {
        CHECK(a[0] == b[1]);
        CHECK(a[1] == b[0]);
      } else {
        // same vertex set, opposite cyclic orientation
        bool opposite = false;
        for (int s = 0; s < 3; ++s)
          if (a[0] == b[s] && a[1] == b[(s + 2) % 3] && a[2] == b[(s + 1) % 3])
            opposite = true;
        CHECK(opposite);
      }
    }
  }
}

TEST_CASE("boundary normals are unit and outward") {
  for (int dim : {2, 3}) {
    Mesh m = build_structured_mesh({0, 0, 0}, {2, 1, 1}, {4, 3, 2}, dim);
    for (const auto& f : m.boundary_facets) {
      const Point n = facet_normal(m, f);
      const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
      CHECK(len == doctest::Approx(1.0).epsilon(1e-12));
      const int axis = tag_axis(f.tag, dim);
      const double expect = tag_is_upper(f.tag) ? 1.0 : -1.0;
      CHECK(n[axis] == doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("point location round trip") {
  Mesh m = build_structured_mesh({0, 0, 0}, {1, 2, 0}, {5, 4, 1}, 2);
  std::array<double, 4> bary;
  const Point x{0.37, 1.21, 0.0};
  const int cell = m.locate(x, bary);
  REQUIRE(cell >= 0);
  Point back{0, 0, 0};
  for (int k = 0; k < 3; ++k)
    for (int a = 0; a < 2; ++a) back[a] += bary[k] * m.vertices[m.cells[cell][k]][a];
  CHECK(back[0] == doctest::Approx(x[0]).epsilon(1e-13));
  CHECK(back[1] == doctest::Approx(x[1]).epsilon(1e-13));
  CHECK(m.locate({5.0, 0.5, 0.0}, bary) == -1);
}

TEST_CASE("boundary dof classification") {
  Mesh m = build_structured_mesh({0, 0, 0}, {1, 1, 0}, {10, 10, 1}, 2);
  FunctionSpace p1(m, Family::P1, 1);
  auto all = classify_boundary_dofs(p1, [](const Point&) { return true; });
  CHECK(all.size() == 40);

  FunctionSpace p1b(m, Family::P1Bubble, 2);
  auto allb = classify_boundary_dofs(p1b, [](const Point&) { return true; });
  for (int dof : allb) CHECK(!p1b.node_is_interior_bubble(dof / 2));
  CHECK(allb.size() == 80);

  // two-triangle mesh: 4 vertices plus the 4 outer edge midpoints; the
  // diagonal midpoint stays interior
  Mesh m1 = build_structured_mesh({0, 0, 0}, {1, 1, 0}, {1, 1, 1}, 2);
  FunctionSpace p2(m1, Family::P2, 1);
  CHECK(p2.n_dofs() == 9);
  auto bd = classify_boundary_dofs(p2, [](const Point&) { return true; });
  CHECK(bd.size() == 8);

  // face selection by coordinate predicate
  auto left = classify_boundary_dofs(p1, [](const Point& p) { return p[0] < 1e-12; });
  CHECK(left.size() == 11);
}
