#include "tmflow/quadrature.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "tmflow/errors.hpp"

namespace tmflow {

void gauss_legendre01(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    // Newton on P_n from the Chebyshev initial guess.
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[i] = 0.5 * (t + 1.0);
    w[i] = 1.0 / ((1.0 - t * t) * dp * dp);
  }
}

namespace {

QuadratureRule make_rule(int dim, int degree) {
  QuadratureRule r;
  r.dim = dim;
  r.exactness_degree = degree;
  if (dim == 2) {
    if (degree == 1) {
      r.points.push_back({1.0 / 3, 1.0 / 3, 1.0 / 3, 0.0});
      r.weights.push_back(0.5);
      return r;
    }
    if (degree == 2) {
      const double a = 2.0 / 3, b = 1.0 / 6;
      r.points = {{a, b, b, 0.0}, {b, a, b, 0.0}, {b, b, a, 0.0}};
      r.weights = {1.0 / 6, 1.0 / 6, 1.0 / 6};
      return r;
    }
    // Collapsed tensor rule: lambda = ((1-u)(1-v), u, v(1-u)).
    const int nu = (degree + 3) / 2;  // integrand degree p+1 in u
    const int nv = (degree + 2) / 2;  // degree p in v
    std::vector<double> xu, wu, xv, wv;
    gauss_legendre01(nu, xu, wu);
    gauss_legendre01(nv, xv, wv);
    for (int iu = 0; iu < nu; ++iu)
      for (int iv = 0; iv < nv; ++iv) {
        const double u = xu[iu], v = xv[iv];
        r.points.push_back({(1.0 - u) * (1.0 - v), u, v * (1.0 - u), 0.0});
        r.weights.push_back(wu[iu] * wv[iv] * (1.0 - u));
      }
    return r;
  }
  if (degree == 1) {
    r.points.push_back({0.25, 0.25, 0.25, 0.25});
    r.weights.push_back(1.0 / 6);
    return r;
  }
  if (degree == 2) {
    const double a = 0.5854101966249685;  // (5 + 3 sqrt 5) / 20
    const double b = 0.1381966011250105;  // (5 - sqrt 5) / 20
    for (int i = 0; i < 4; ++i) {
      std::array<double, 4> p{b, b, b, b};
      p[i] = a;
      r.points.push_back(p);
      r.weights.push_back(1.0 / 24);
    }
    return r;
  }
  // Collapsed tensor rule with lambda0 = (1-u)(1-v)(1-w).
  const int nu = (degree + 4) / 2;  // integrand degree p+2 in u
  const int nv = (degree + 3) / 2;
  const int nw = (degree + 2) / 2;
  std::vector<double> xu, wu, xv, wv, xw, ww;
  gauss_legendre01(nu, xu, wu);
  gauss_legendre01(nv, xv, wv);
  gauss_legendre01(nw, xw, ww);
  for (int iu = 0; iu < nu; ++iu)
    for (int iv = 0; iv < nv; ++iv)
      for (int iw = 0; iw < nw; ++iw) {
        const double u = xu[iu], v = xv[iv], w = xw[iw];
        r.points.push_back({(1.0 - u) * (1.0 - v) * (1.0 - w), u,
                            v * (1.0 - u), w * (1.0 - u) * (1.0 - v)});
        r.weights.push_back(wu[iu] * wv[iv] * ww[iw] * (1.0 - u) * (1.0 - u) *
                            (1.0 - v));
      }
  return r;
}

}  // namespace

const QuadratureRule& quadrature(int dim, int degree) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("dim must be 2 or 3");
  if (degree < 1) throw std::invalid_argument("quadrature degree must be >= 1");
  if (degree > 30) throw UnsupportedFeature("quadrature degree above 30");
  static std::map<std::pair<int, int>, QuadratureRule> cache;
  auto key = std::make_pair(dim, degree);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, make_rule(dim, degree)).first;
  return it->second;
}

double simplex_monomial_integral(int dim, int a, int b, int c) {
  auto fact = [](int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  if (dim == 2) return fact(a) * fact(b) / fact(a + b + 2);
  return fact(a) * fact(b) * fact(c) / fact(a + b + c + 3);
}

}  // namespace tmflow
