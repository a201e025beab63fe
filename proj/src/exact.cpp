#include "tmflow/exact.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace tmflow {

void PhysicalParams::validate() const {
  for (double v : {nu, nu_r, e_hat, alpha, beta, kappa, D})
    if (!(v > 0.0)) throw std::invalid_argument("physical parameters must be positive");
}

namespace {

// 1D factors of the 2D fields: a(x) = x^2 (x-1)^2, b(y) = y (y-1) (2y-1).
double fa(double x) { return x * x * (x - 1.0) * (x - 1.0); }
double fa1(double x) { return 2.0 * x * (x - 1.0) * (2.0 * x - 1.0); }
double fa2(double x) { return 12.0 * x * x - 12.0 * x + 2.0; }
double fb(double y) { return y * (y - 1.0) * (2.0 * y - 1.0); }
double fb1(double y) { return 6.0 * y * y - 6.0 * y + 1.0; }
double fb2(double y) { return 12.0 * y - 6.0; }

// c1 * a(x) b(y) + c2 * a(y) b(x), times 10 cos(t)
ScalarExact combo2d(double c1, double c2) {
  ScalarExact s;
  s.value = [=](const Point& p, double t) {
    return 10.0 * std::cos(t) * (c1 * fa(p[0]) * fb(p[1]) + c2 * fa(p[1]) * fb(p[0]));
  };
  s.grad = [=](const Point& p, double t, double* g) {
    const double c = 10.0 * std::cos(t);
    g[0] = c * (c1 * fa1(p[0]) * fb(p[1]) + c2 * fa(p[1]) * fb1(p[0]));
    g[1] = c * (c1 * fa(p[0]) * fb1(p[1]) + c2 * fa1(p[1]) * fb(p[0]));
    g[2] = 0.0;
  };
  s.hess = [=](const Point& p, double t, double* h) {
    const double c = 10.0 * std::cos(t);
    for (int i = 0; i < 9; ++i) h[i] = 0.0;
    h[0] = c * (c1 * fa2(p[0]) * fb(p[1]) + c2 * fa(p[1]) * fb2(p[0]));   // xx
    h[4] = c * (c1 * fa(p[0]) * fb2(p[1]) + c2 * fa2(p[1]) * fb(p[0]));   // yy
    h[1] = c * (c1 * fa1(p[0]) * fb1(p[1]) + c2 * fa1(p[1]) * fb1(p[0])); // xy
    h[3] = h[1];
  };
  s.dt = [=](const Point& p, double t) {
    return -10.0 * std::sin(t) * (c1 * fa(p[0]) * fb(p[1]) + c2 * fa(p[1]) * fb(p[0]));
  };
  return s;
}

}  // namespace

ExactSolution exact_solution_2d() {
  ExactSolution e;
  e.dim = 2;
  e.name = "ms2d";
  e.u.push_back(combo2d(1.0, 0.0));   // u1 =  10 a(x) b(y) cos t
  e.u.push_back(combo2d(0.0, -1.0));  // u2 = -10 a(y) b(x) cos t
  e.w.push_back(combo2d(1.0, 1.0));   // w  =  u1 - u2
  e.T = combo2d(1.0, -1.0);           // T  =  u1 + u2

  e.p.value = [](const Point& p, double t) {
    return 10.0 * (2.0 * p[0] - 1.0) * (2.0 * p[1] - 1.0) * std::cos(t);
  };
  e.p.grad = [](const Point& p, double t, double* g) {
    g[0] = 20.0 * (2.0 * p[1] - 1.0) * std::cos(t);
    g[1] = 20.0 * (2.0 * p[0] - 1.0) * std::cos(t);
    g[2] = 0.0;
  };
  e.p.hess = [](const Point&, double t, double* h) {
    for (int i = 0; i < 9; ++i) h[i] = 0.0;
    h[1] = h[3] = 40.0 * std::cos(t);
  };
  e.p.dt = [](const Point& p, double t) {
    return -10.0 * (2.0 * p[0] - 1.0) * (2.0 * p[1] - 1.0) * std::sin(t);
  };
  return e;
}

namespace {

// One 3D component of the form (f(xa)^pow + g) cos t built from the closed
// forms below; implemented directly per component for clarity.
ScalarExact poly3d(int kind) {
  // kind 0..2: velocity components, 3..5: angular components, 6: T, 7: p
  ScalarExact s;
  switch (kind) {
    case 0:  // (y^4 + z^2) cos t
      s.value = [](const Point& p, double t) {
        return (std::pow(p[1], 4) + p[2] * p[2]) * std::cos(t);
      };
      s.grad = [](const Point& p, double t, double* g) {
        g[0] = 0.0;
        g[1] = 4.0 * std::pow(p[1], 3) * std::cos(t);
        g[2] = 2.0 * p[2] * std::cos(t);
      };
      s.hess = [](const Point& p, double t, double* h) {
        for (int i = 0; i < 9; ++i) h[i] = 0.0;
        h[4] = 12.0 * p[1] * p[1] * std::cos(t);
        h[8] = 2.0 * std::cos(t);
      };
      s.dt = [](const Point& p, double t) {
        return -(std::pow(p[1], 4) + p[2] * p[2]) * std::sin(t);
      };
      break;
    case 1:  // (z^4 + x^2) cos t
      s.value = [](const Point& p, double t) {
        return (std::pow(p[2], 4) + p[0] * p[0]) * std::cos(t);
      };
      s.grad = [](const Point& p, double t, double* g) {
        g[0] = 2.0 * p[0] * std::cos(t);
        g[1] = 0.0;
        g[2] = 4.0 * std::pow(p[2], 3) * std::cos(t);
      };
      s.hess = [](const Point& p, double t, double* h) {
        for (int i = 0; i < 9; ++i) h[i] = 0.0;
        h[0] = 2.0 * std::cos(t);
        h[8] = 12.0 * p[2] * p[2] * std::cos(t);
      };
      s.dt = [](const Point& p, double t) {
        return -(std::pow(p[2], 4) + p[0] * p[0]) * std::sin(t);
      };
      break;
    case 2:  // (x^4 + y^2) cos t
      s.value = [](const Point& p, double t) {
        return (std::pow(p[0], 4) + p[1] * p[1]) * std::cos(t);
      };
      s.grad = [](const Point& p, double t, double* g) {
        g[0] = 4.0 * std::pow(p[0], 3) * std::cos(t);
        g[1] = 2.0 * p[1] * std::cos(t);
        g[2] = 0.0;
      };
      s.hess = [](const Point& p, double t, double* h) {
        for (int i = 0; i < 9; ++i) h[i] = 0.0;
        h[0] = 12.0 * p[0] * p[0] * std::cos(t);
        h[4] = 2.0 * std::cos(t);
      };
      s.dt = [](const Point& p, double t) {
        return -(std::pow(p[0], 4) + p[1] * p[1]) * std::sin(t);
      };
      break;
    case 3:  // (sin y + z) cos t
    case 4:  // (sin z + x) cos t
    case 5: {
      // (sin x + y) cos t; the sine argument axis and the linear axis
      const int sa = kind == 3 ? 1 : (kind == 4 ? 2 : 0);
      const int la = kind == 3 ? 2 : (kind == 4 ? 0 : 1);
      s.value = [=](const Point& p, double t) {
        return (std::sin(p[sa]) + p[la]) * std::cos(t);
      };
      s.grad = [=](const Point& p, double t, double* g) {
        g[0] = g[1] = g[2] = 0.0;
        g[sa] = std::cos(p[sa]) * std::cos(t);
        g[la] += std::cos(t);
      };
      s.hess = [=](const Point& p, double t, double* h) {
        for (int i = 0; i < 9; ++i) h[i] = 0.0;
        h[sa * 3 + sa] = -std::sin(p[sa]) * std::cos(t);
      };
      s.dt = [=](const Point& p, double t) {
        return -(std::sin(p[sa]) + p[la]) * std::sin(t);
      };
      break;
    }
    case 6:  // T = u1 + u2 + u3
      s.value = [](const Point& p, double t) {
        double q = 0.0;
        for (int a = 0; a < 3; ++a) q += p[a] * p[a] + std::pow(p[a], 4);
        return q * std::cos(t);
      };
      s.grad = [](const Point& p, double t, double* g) {
        for (int a = 0; a < 3; ++a)
          g[a] = (2.0 * p[a] + 4.0 * std::pow(p[a], 3)) * std::cos(t);
      };
      s.hess = [](const Point& p, double t, double* h) {
        for (int i = 0; i < 9; ++i) h[i] = 0.0;
        for (int a = 0; a < 3; ++a)
          h[a * 3 + a] = (2.0 + 12.0 * p[a] * p[a]) * std::cos(t);
      };
      s.dt = [](const Point& p, double t) {
        double q = 0.0;
        for (int a = 0; a < 3; ++a) q += p[a] * p[a] + std::pow(p[a], 4);
        return -q * std::sin(t);
      };
      break;
    case 7:  // p = (2x-1)(2y-1)(2z-1) cos t
      s.value = [](const Point& p, double t) {
        return (2.0 * p[0] - 1.0) * (2.0 * p[1] - 1.0) * (2.0 * p[2] - 1.0) *
               std::cos(t);
      };
      s.grad = [](const Point& p, double t, double* g) {
        const double f0 = 2.0 * p[0] - 1.0, f1 = 2.0 * p[1] - 1.0,
                     f2 = 2.0 * p[2] - 1.0;
        g[0] = 2.0 * f1 * f2 * std::cos(t);
        g[1] = 2.0 * f0 * f2 * std::cos(t);
        g[2] = 2.0 * f0 * f1 * std::cos(t);
      };
      s.hess = [](const Point& p, double t, double* h) {
        const double f0 = 2.0 * p[0] - 1.0, f1 = 2.0 * p[1] - 1.0,
                     f2 = 2.0 * p[2] - 1.0;
        for (int i = 0; i < 9; ++i) h[i] = 0.0;
        h[1] = h[3] = 4.0 * f2 * std::cos(t);
        h[2] = h[6] = 4.0 * f1 * std::cos(t);
        h[5] = h[7] = 4.0 * f0 * std::cos(t);
      };
      s.dt = [](const Point& p, double t) {
        return -(2.0 * p[0] - 1.0) * (2.0 * p[1] - 1.0) * (2.0 * p[2] - 1.0) *
               std::sin(t);
      };
      break;
  }
  return s;
}

}  // namespace

ExactSolution exact_solution_3d() {
  ExactSolution e;
  e.dim = 3;
  e.name = "ms3d";
  for (int c = 0; c < 3; ++c) e.u.push_back(poly3d(c));
  for (int c = 3; c < 6; ++c) e.w.push_back(poly3d(c));
  e.T = poly3d(6);
  e.p = poly3d(7);
  return e;
}

Forcing forcing_from_exact(const ExactSolution& exact, const PhysicalParams& prm) {
  const int dim = exact.dim;
  const int nw = exact.angular_components();

  auto curl_w = [exact, dim, nw](const Point& x, double t, double* out) {
    double g[3];
    if (dim == 2) {
      exact.w[0].grad(x, t, g);
      out[0] = g[1];
      out[1] = -g[0];
      out[2] = 0.0;
    } else {
      double gw[3][3];
      for (int c = 0; c < nw; ++c) exact.w[c].grad(x, t, gw[c]);
      out[0] = gw[2][1] - gw[1][2];
      out[1] = gw[0][2] - gw[2][0];
      out[2] = gw[1][0] - gw[0][1];
    }
  };

  Forcing f;
  f.f1 = [exact, prm, dim, curl_w](const Point& x, double t, double* out) {
    double uval[3] = {0, 0, 0}, gu[3][3], hu[9], gp[3], cw[3];
    for (int c = 0; c < dim; ++c) {
      uval[c] = exact.u[c].value(x, t);
      exact.u[c].grad(x, t, gu[c]);
    }
    exact.p.grad(x, t, gp);
    curl_w(x, t, cw);
    const double Tval = exact.T.value(x, t);
    for (int c = 0; c < dim; ++c) {
      exact.u[c].hess(x, t, hu);
      double lap = 0.0;
      for (int a = 0; a < dim; ++a) lap += hu[a * 3 + a];
      double conv = 0.0;
      for (int a = 0; a < dim; ++a) conv += uval[a] * gu[c][a];
      const double buoy = (c == dim - 1) ? prm.e_hat * Tval : 0.0;
      out[c] = exact.u[c].dt(x, t) - (prm.nu + prm.nu_r) * lap + conv + gp[c] -
               2.0 * prm.nu_r * cw[c] - buoy;
    }
  };

  f.f2 = [exact, prm, dim, nw](const Point& x, double t, double* out) {
    double uval[3] = {0, 0, 0};
    for (int c = 0; c < dim; ++c) uval[c] = exact.u[c].value(x, t);
    double gu[3][3];
    for (int c = 0; c < dim; ++c) exact.u[c].grad(x, t, gu[c]);
    // curl u with the planar convention in 2D
    double cu[3] = {0, 0, 0};
    if (dim == 2) {
      cu[0] = gu[1][0] - gu[0][1];  // scalar curl
    } else {
      cu[0] = gu[2][1] - gu[1][2];
      cu[1] = gu[0][2] - gu[2][0];
      cu[2] = gu[1][0] - gu[0][1];
    }
    double hw[3][9];
    for (int c = 0; c < nw; ++c) exact.w[c].hess(x, t, hw[c]);
    for (int c = 0; c < nw; ++c) {
      double gwc[3];
      exact.w[c].grad(x, t, gwc);
      double lap = 0.0;
      for (int a = 0; a < dim; ++a) lap += hw[c][a * 3 + a];
      double conv = 0.0;
      for (int a = 0; a < dim; ++a) conv += uval[a] * gwc[a];
      // grad(div w)_c = sum_b d_c d_b w_b; identically zero in 2D where
      // the angular field is the scalar out-of-plane component.
      double graddiv = 0.0;
      if (dim == 3)
        for (int b = 0; b < 3; ++b) graddiv += hw[b][c * 3 + b];
      const double wval = exact.w[c].value(x, t);
      const double curl_src = dim == 2 ? cu[0] : cu[c];
      out[c] = exact.w[c].dt(x, t) - prm.alpha * lap + conv - prm.beta * graddiv +
               4.0 * prm.nu_r * wval - 2.0 * prm.nu_r * curl_src;
    }
  };

  f.f3 = [exact, prm, dim, curl_w](const Point& x, double t) {
    double uval[3] = {0, 0, 0}, gT[3], hT[9], cw[3];
    for (int c = 0; c < dim; ++c) uval[c] = exact.u[c].value(x, t);
    exact.T.grad(x, t, gT);
    exact.T.hess(x, t, hT);
    curl_w(x, t, cw);
    double lap = 0.0, conv = 0.0, s = 0.0;
    for (int a = 0; a < dim; ++a) {
      lap += hT[a * 3 + a];
      conv += uval[a] * gT[a];
      s += cw[a] * gT[a];
    }
    return exact.T.dt(x, t) - prm.kappa * lap + conv - prm.D * s;
  };
  return f;
}

double max_divergence_sample(const ExactSolution& exact, double t, int n_points,
                             unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < n_points; ++i) {
    Point x{dist(rng), dist(rng), exact.dim == 3 ? dist(rng) : 0.0};
    double div = 0.0, g[3];
    for (int c = 0; c < exact.dim; ++c) {
      exact.u[c].grad(x, t, g);
      div += g[c];
    }
    worst = std::max(worst, std::abs(div));
  }
  return worst;
}

}  // namespace tmflow
