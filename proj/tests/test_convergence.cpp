#include <stdexcept>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "tmflow/convergence.hpp"

using namespace tmflow;

TEST_CASE("rate formula") {
  CHECK(convergence_rate(2.0, 1.0, 0.1, 0.05) == doctest::Approx(1.0));
  CHECK(convergence_rate(4.0, 1.0, 0.1, 0.05) == doctest::Approx(2.0));
  // published first-order errors at 1/h = 10 and 20
  CHECK(convergence_rate(2.90e-3, 7.31e-4, 0.1, 0.05) ==
        doctest::Approx(1.99).epsilon(0.005));
  CHECK_THROWS_AS(convergence_rate(-1.0, 1.0, 0.1, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(convergence_rate(1.0, 0.0, 0.1, 0.05), std::invalid_argument);
}

TEST_CASE("rates are invariant under uniform error scaling") {
  const double r1 = convergence_rate(3.1e-2, 8.0e-3, 0.2, 0.1);
  const double r2 = convergence_rate(7.0 * 3.1e-2, 7.0 * 8.0e-3, 0.2, 0.1);
  CHECK(r1 == doctest::Approx(r2).epsilon(1e-14));
}

TEST_CASE("error norms vanish for reproduced polynomials") {
  Mesh m = build_structured_mesh({0, 0, 0}, {1, 1, 0}, {5, 5, 1}, 2);
  FunctionSpace sp(m, Family::P1, 1);
  std::vector<ScalarExact> exact(1);
  exact[0].value = [](const Point& p, double) { return 3.0 * p[0] - p[1] + 2.0; };
  exact[0].grad = [](const Point&, double, double* g) {
    g[0] = 3.0;
    g[1] = -1.0;
    g[2] = 0.0;
  };
  Field f = interpolate(sp, [&](const Point& p, int) {
    return exact[0].value(p, 0.0);
  });
  ErrorNorms e = error_norms(f, exact, 0.0);
  CHECK(e.l2 < 1e-12);
  CHECK(e.h1_semi < 1e-12);

  Field zero(sp);
  std::vector<ScalarExact> zex(1);
  zex[0].value = [](const Point&, double) { return 0.0; };
  zex[0].grad = [](const Point&, double, double* g) { g[0] = g[1] = g[2] = 0.0; };
  ErrorNorms ez = error_norms(zero, zex, 0.0);
  CHECK(ez.l2 == 0.0);
  CHECK(ez.h1_semi == 0.0);
}

TEST_CASE("interpolation of a smooth field is second order") {
  std::vector<ScalarExact> exact(1);
  exact[0].value = [](const Point& p, double) {
    return std::sin(M_PI * p[0]) * std::sin(M_PI * p[1]);
  };
  exact[0].grad = [](const Point& p, double, double* g) {
    g[0] = M_PI * std::cos(M_PI * p[0]) * std::sin(M_PI * p[1]);
    g[1] = M_PI * std::sin(M_PI * p[0]) * std::cos(M_PI * p[1]);
    g[2] = 0.0;
  };
  double coarse = 0.0;
  for (int n : {8, 16}) {
    Mesh m = build_structured_mesh({0, 0, 0}, {1, 1, 0}, {n, n, 1}, 2);
    FunctionSpace sp(m, Family::P1, 1);
    Field f = interpolate(sp, [&](const Point& p, int) {
      return exact[0].value(p, 0.0);
    });
    const double err = error_norms(f, exact, 0.0).l2;
    if (n == 8)
      coarse = err;
    else {
      const double ratio = coarse / err;
      CHECK(ratio > 3.7);
      CHECK(ratio < 4.3);
    }
  }
}

TEST_CASE("table output formats") {
  ConvergenceTable t;
  t.rows.push_back({10, 1e-2, 2e-2, 3e-3, 4e-3, 1e-1, 2e-1, 3e-1, 0.5});
  t.rows.push_back({20, 2.5e-3, 1e-2, 7.5e-4, 1e-3, 5e-2, 1e-1, 1.5e-1, 2.0});
  auto rates = t.rates();
  REQUIRE(rates.size() == 1);
  CHECK(rates[0].uL2 == doctest::Approx(2.0));
  CHECK(rates[0].pL2 == doctest::Approx(1.0));
  std::ostringstream os;
  t.write_csv(os);
  CHECK(os.str().rfind("inv_h,uL2,pL2,wL2,TL2,uH1,wH1,TH1,time_s\n", 0) == 0);
  const std::string text = t.to_text();
  CHECK(text.find("rate") != std::string::npos);
}
