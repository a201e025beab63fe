#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "tmflow/benchmarks.hpp"
#include "tmflow/profile.hpp"

using namespace tmflow;

TEST_CASE("preset definitions") {
  BenchmarkPreset b = load_preset(BenchmarkName::Benard2D);
  CHECK(b.hi[0] == 5.0);
  CHECK(b.hi[1] == 1.0);
  CHECK(b.problem.T_bc.dirichlet[kBottom]);
  CHECK(b.problem.T_bc.value[kBottom]({2.0, 0.0, 0.0}, 0.0) == 1.0);
  CHECK(b.problem.T_bc.value[kTop]({2.0, 1.0, 0.0}, 0.0) == 0.0);
  CHECK(!b.problem.T_bc.dirichlet[kLeft]);
  CHECK(b.problem.T0({0.0, 0.25, 0.0}, 0.0) == doctest::Approx(0.75));
  CHECK(b.config.tau == doctest::Approx(1.0 / 400));

  BenchmarkPreset c = load_preset(BenchmarkName::Cavity2D, 1e5);
  CHECK(c.params.e_hat == 1e5);
  CHECK(c.problem.T_bc.dirichlet[kLeft]);
  CHECK(c.problem.T_bc.value[kLeft]({0.0, 0.5, 0.0}, 0.0) == 1.0);
  CHECK(c.problem.T_bc.value[kRight]({1.0, 0.5, 0.0}, 0.0) == 0.0);
  CHECK(!c.problem.T_bc.dirichlet[kTop]);

  BenchmarkPreset h = load_preset(BenchmarkName::Cavity3DHotStrip);
  CHECK(h.dim == 3);
  CHECK(h.params.e_hat == 10.0);
  CHECK(h.problem.T_bc.dirichlet[kBottom]);
  CHECK(h.problem.T_bc.value[kBottom]({0.5, 0.3, 0.0}, 0.0) == doctest::Approx(1.0));
  CHECK(!h.problem.T_bc.dirichlet[kRight]);
  CHECK(!h.problem.T_bc.dirichlet[kFront]);
  CHECK(!h.problem.T_bc.dirichlet[kBack]);

  CHECK_THROWS_AS(benchmark_from_string("spinny"), std::invalid_argument);
}

TEST_CASE("profiles sample fields along lines") {
  Mesh m = build_structured_mesh({0, 0, 0}, {1, 1, 0}, {8, 8, 1}, 2);
  FunctionSpace sp(m, Family::P1, 1);
  Field c = interpolate(sp, [](const Point&, int) { return 4.25; });
  auto samples = extract_profile(c, 0, {0.2, 0.1, 0}, {0.2, 0.9, 0}, 11);
  REQUIRE(samples.size() == 11);
  for (const auto& s : samples) CHECK(s.value == doctest::Approx(4.25));

  Field fx = interpolate(sp, [](const Point& p, int) { return p[0]; });
  auto sx = extract_profile(fx, 0, {0.0, 0.5, 0}, {1.0, 0.5, 0}, 21);
  for (const auto& s : sx) CHECK(s.value == doctest::Approx(s.s).epsilon(1e-12));

  CHECK_THROWS_AS(extract_profile(fx, 0, {0, 0.5, 0}, {2.0, 0.5, 0}, 5),
                  std::invalid_argument);
}

TEST_CASE("benard temperature stays in range after one step") {
  BenchmarkPreset b = load_preset(BenchmarkName::Benard2D, 1e4);
  Mesh mesh = build_structured_mesh(b.lo, b.hi, b.cells, b.dim);
  SchemeConfig cfg = b.config;
  cfg.t_end = cfg.tau;  // a single step
  cfg.energy_monitor = false;
  ProjectionScheme scheme(mesh, b.params, cfg, b.problem);
  auto res = scheme.run_transient();
  auto [lo, hi] = field_range(Field(scheme.temperature_space(), res.state.T));
  CHECK(lo >= -1e-2);
  CHECK(hi <= 1.0 + 1e-2);
}

TEST_CASE("pressure jump norm reacts to roughness") {
  Mesh m = build_structured_mesh({0, 0, 0}, {1, 1, 0}, {8, 8, 1}, 2);
  FunctionSpace sp(m, Family::P1, 1);
  Field smooth = interpolate(sp, [](const Point& p, int) { return p[0]; });
  CHECK(boundary_pressure_jump(smooth) < 1e-13);  // constant gradient
  Field rough = interpolate(sp, [](const Point& p, int) {
    return std::sin(5.5 * M_PI * p[0]) * std::cos(2.5 * M_PI * p[1]);
  });
  CHECK(boundary_pressure_jump(rough) > 1.0);
}
