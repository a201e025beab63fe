#include <cmath>
#include <random>

#include "doctest.h"
#include "tmflow/assembly.hpp"
#include "tmflow/exact.hpp"

using namespace tmflow;

namespace {

// centred-difference checks of the bundled analytic derivatives
void check_derivatives(const ScalarExact& s, int dim, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(0.1, 0.9);
  const double h = 1e-6;
  for (int trial = 0; trial < 50; ++trial) {
    Point x{dist(rng), dist(rng), dim == 3 ? dist(rng) : 0.0};
    const double t = dist(rng);
    double g[3], hess[9];
    s.grad(x, t, g);
    s.hess(x, t, hess);
    for (int a = 0; a < dim; ++a) {
      Point xp = x, xm = x;
      xp[a] += h;
      xm[a] -= h;
      const double fd = (s.value(xp, t) - s.value(xm, t)) / (2 * h);
      CHECK(std::abs(fd - g[a]) < 1e-6);
      double gp[3], gm[3];
      s.grad(xp, t, gp);
      s.grad(xm, t, gm);
      for (int b = 0; b < dim; ++b) {
        const double fd2 = (gp[b] - gm[b]) / (2 * h);
        CHECK(std::abs(fd2 - hess[a * 3 + b]) < 1e-5);
      }
    }
    const double fdt = (s.value(x, t + h) - s.value(x, t - h)) / (2 * h);
    CHECK(std::abs(fdt - s.dt(x, t)) < 1e-6);
  }
}

}  // namespace

TEST_CASE("exact velocities are divergence free") {
  CHECK(max_divergence_sample(exact_solution_2d(), 0.05, 100) < 1e-12);
  CHECK(max_divergence_sample(exact_solution_3d(), 0.3, 100) < 1e-12);
}

TEST_CASE("analytic derivatives match finite differences") {
  std::mt19937 rng(8);
  for (int dim : {2, 3}) {
    ExactSolution e = dim == 2 ? exact_solution_2d() : exact_solution_3d();
    for (const auto& c : e.u) check_derivatives(c, dim, rng);
    for (const auto& c : e.w) check_derivatives(c, dim, rng);
    check_derivatives(e.T, dim, rng);
    check_derivatives(e.p, dim, rng);
  }
}

TEST_CASE("synthesized forcing closes the strong form") {
  // independent transcription of the governing equations using the
  // analytic derivative evaluators
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> dist(0.05, 0.95);
  for (int dim : {2, 3}) {
    ExactSolution e = dim == 2 ? exact_solution_2d() : exact_solution_3d();
    PhysicalParams prm;
    prm.nu = 0.7;
    prm.nu_r = 1.3;
    prm.e_hat = 2.0;
    prm.alpha = 0.9;
    prm.beta = 1.1;
    prm.kappa = 0.8;
    prm.D = 1.2;
    Forcing f = forcing_from_exact(e, prm);
    const int nw = e.angular_components();
    for (int trial = 0; trial < 100; ++trial) {
      Point x{dist(rng), dist(rng), dim == 3 ? dist(rng) : 0.0};
      const double t = dist(rng);
      double uval[3] = {0, 0, 0}, gu[3][3], hu[3][9], gw[3][3], hwc[3][9];
      for (int c = 0; c < dim; ++c) {
        uval[c] = e.u[c].value(x, t);
        e.u[c].grad(x, t, gu[c]);
        e.u[c].hess(x, t, hu[c]);
      }
      for (int c = 0; c < nw; ++c) {
        e.w[c].grad(x, t, gw[c]);
        e.w[c].hess(x, t, hwc[c]);
      }
      double cw[3] = {0, 0, 0};
      if (dim == 2) {
        cw[0] = gw[0][1];
        cw[1] = -gw[0][0];
      } else {
        cw[0] = gw[2][1] - gw[1][2];
        cw[1] = gw[0][2] - gw[2][0];
        cw[2] = gw[1][0] - gw[0][1];
      }
      double f1[3], f2[3];
      f.f1(x, t, f1);
      f.f2(x, t, f2);
      const double Tv = e.T.value(x, t);
      for (int c = 0; c < dim; ++c) {
        double lap = 0, conv = 0, gp[3];
        for (int a = 0; a < dim; ++a) {
          lap += hu[c][a * 3 + a];
          conv += uval[a] * gu[c][a];
        }
        e.p.grad(x, t, gp);
        const double lhs = e.u[c].dt(x, t) - (prm.nu + prm.nu_r) * lap + conv +
                           gp[c] - 2 * prm.nu_r * cw[c] -
                           (c == dim - 1 ? prm.e_hat * Tv : 0.0);
        CHECK(std::abs(lhs - f1[c]) < 1e-10);
      }
      double cu[3] = {0, 0, 0};
      if (dim == 2) {
        cu[0] = gu[1][0] - gu[0][1];
      } else {
        cu[0] = gu[2][1] - gu[1][2];
        cu[1] = gu[0][2] - gu[2][0];
        cu[2] = gu[1][0] - gu[0][1];
      }
      for (int c = 0; c < nw; ++c) {
        double lap = 0, conv = 0, graddiv = 0;
        for (int a = 0; a < dim; ++a) {
          lap += hwc[c][a * 3 + a];
          conv += uval[a] * gw[c][a];
        }
        if (dim == 3)
          for (int b = 0; b < 3; ++b) graddiv += hwc[b][c * 3 + b];
        const double lhs = e.w[c].dt(x, t) - prm.alpha * lap + conv -
                           prm.beta * graddiv + 4 * prm.nu_r * e.w[c].value(x, t) -
                           2 * prm.nu_r * (dim == 2 ? cu[0] : cu[c]);
        CHECK(std::abs(lhs - f2[c]) < 1e-10);
      }
      double gT[3], hT[9];
      e.T.grad(x, t, gT);
      e.T.hess(x, t, hT);
      double lap = 0, conv = 0, s = 0;
      for (int a = 0; a < dim; ++a) {
        lap += hT[a * 3 + a];
        conv += uval[a] * gT[a];
        s += cw[a] * gT[a];
      }
      const double lhs = e.T.dt(x, t) - prm.kappa * lap + conv - prm.D * s;
      CHECK(std::abs(lhs - f.f3(x, t)) < 1e-10);
    }
  }
}

TEST_CASE("exact pressures have zero mean") {
  for (int dim : {2, 3}) {
    ExactSolution e = dim == 2 ? exact_solution_2d() : exact_solution_3d();
    Mesh m = build_structured_mesh({0, 0, 0}, {1, 1, 1},
                                   {dim == 2 ? 8 : 4, dim == 2 ? 8 : 4, 4}, dim);
    const double mean = integrate(m, 7, [&](const IntegrandPoint& ip) {
      return e.p.value(ip.x, 0.37);
    });
    CHECK(std::abs(mean) < 1e-12);
  }
}
