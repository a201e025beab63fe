#include "tmflow/convergence.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace tmflow {

ErrorNorms error_norms(const Field& field, const std::vector<ScalarExact>& exact,
                       double t, double subtract_mean) {
  const FunctionSpace& sp = *field.space;
  const Mesh& mesh = sp.mesh();
  const int dim = mesh.dim;
  const int ncomp = sp.components();
  if (static_cast<int>(exact.size()) != ncomp)
    throw std::invalid_argument("component count mismatch");
  const int degree = 2 * sp.element().poly_degree() + 3;
  const QuadratureRule& rule = quadrature(dim, degree);
  const auto& elem = sp.element();
  const int nb = elem.n_basis();

  double e0 = 0.0, e1 = 0.0;
  std::vector<double> phi(nb);
  double grads[10][3];
  for (int cell = 0; cell < mesh.n_cells(); ++cell) {
    const CellGeometry geom = CellGeometry::make(mesh, cell);
    for (int q = 0; q < rule.size(); ++q) {
      const double w = rule.weights[q] * geom.detJ;
      const double* bary = rule.points[q].data();
      elem.eval(bary, phi.data());
      eval_grad_basis(elem, bary, geom, grads);
      const Point x = geom.map(bary);
      for (int c = 0; c < ncomp; ++c) {
        double vh = 0.0, gh[3] = {0.0, 0.0, 0.0};
        for (int k = 0; k < nb; ++k) {
          const double coef = field.coeffs[sp.dof(sp.cell_node(cell, k), c)];
          vh += coef * phi[k];
          for (int a = 0; a < dim; ++a) gh[a] += coef * grads[k][a];
        }
        const double ve = exact[c].value(x, t) - subtract_mean;
        double ge[3] = {0.0, 0.0, 0.0};
        exact[c].grad(x, t, ge);
        e0 += w * (ve - vh) * (ve - vh);
        for (int a = 0; a < dim; ++a) e1 += w * (ge[a] - gh[a]) * (ge[a] - gh[a]);
      }
    }
  }
  return {std::sqrt(e0), std::sqrt(e1)};
}

double convergence_rate(double e_coarse, double e_fine, double h_coarse,
                        double h_fine) {
  if (!(e_coarse > 0.0) || !(e_fine > 0.0) || !(h_coarse > 0.0) || !(h_fine > 0.0))
    throw std::invalid_argument("convergence_rate needs positive inputs");
  return std::log(e_coarse / e_fine) / std::log(h_coarse / h_fine);
}

std::vector<ConvergenceTable::Rates> ConvergenceTable::rates() const {
  std::vector<Rates> out;
  for (size_t i = 1; i < rows.size(); ++i) {
    const ConvergenceRow& a = rows[i - 1];
    const ConvergenceRow& b = rows[i];
    const double ha = 1.0 / a.inv_h, hb = 1.0 / b.inv_h;
    out.push_back({convergence_rate(a.uL2, b.uL2, ha, hb),
                   convergence_rate(a.pL2, b.pL2, ha, hb),
                   convergence_rate(a.wL2, b.wL2, ha, hb),
                   convergence_rate(a.TL2, b.TL2, ha, hb),
                   convergence_rate(a.uH1, b.uH1, ha, hb),
                   convergence_rate(a.wH1, b.wH1, ha, hb),
                   convergence_rate(a.TH1, b.TH1, ha, hb)});
  }
  return out;
}

void ConvergenceTable::write_csv(std::ostream& os) const {
  os << "inv_h,uL2,pL2,wL2,TL2,uH1,wH1,TH1,time_s\n";
  char buf[512];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf),
                  "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.inv_h,
                  r.uL2, r.pL2, r.wL2, r.TL2, r.uH1, r.wH1, r.TH1, r.time_s);
    os << buf;
  }
}

std::string ConvergenceTable::to_text() const {
  std::ostringstream os;
  char buf[512];
  std::snprintf(buf, sizeof(buf), "%6s %10s %10s %10s %10s %10s %10s %10s %9s\n",
                "1/h", "uL2", "pL2", "wL2", "TL2", "uH1", "wH1", "TH1", "time(s)");
  os << buf;
  const auto rt = rates();
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    std::snprintf(buf, sizeof(buf),
                  "%6d %10.3e %10.3e %10.3e %10.3e %10.3e %10.3e %10.3e %9.2f\n",
                  r.inv_h, r.uL2, r.pL2, r.wL2, r.TL2, r.uH1, r.wH1, r.TH1,
                  r.time_s);
    os << buf;
    if (i > 0) {
      const auto& k = rt[i - 1];
      std::snprintf(buf, sizeof(buf),
                    "%6s %10.2f %10.2f %10.2f %10.2f %10.2f %10.2f %10.2f\n",
                    "rate", k.uL2, k.pL2, k.wL2, k.TL2, k.uH1, k.wH1, k.TH1);
      os << buf;
    }
  }
  return os.str();
}

ProblemDef manufactured_problem(const ExactSolution& exact,
                                const PhysicalParams& params) {
  ProblemDef def;
  const int dim = exact.dim;
  const int nw = exact.angular_components();
  def.u_dirichlet = [exact, dim](const Point& p, double t, double* out) {
    for (int c = 0; c < dim; ++c) out[c] = exact.u[c].value(p, t);
  };
  def.w_dirichlet = [exact, nw](const Point& p, double t, double* out) {
    for (int c = 0; c < nw; ++c) out[c] = exact.w[c].value(p, t);
  };
  def.T_bc = TemperatureBC::all_dirichlet(
      [exact](const Point& p, double t) { return exact.T.value(p, t); });
  def.u0 = def.u_dirichlet;
  def.w0 = def.w_dirichlet;
  def.T0 = [exact](const Point& p, double t) { return exact.T.value(p, t); };
  def.p0 = [exact](const Point& p, double t) { return exact.p.value(p, t); };
  Forcing f = forcing_from_exact(exact, params);
  def.f1 = f.f1;
  def.f2 = f.f2;
  def.f3 = f.f3;
  return def;
}

ConvergenceTable run_convergence_study(const StudySpec& spec,
                                       const ExactSolution& exact,
                                       const PhysicalParams& params) {
  if (exact.dim != spec.dim)
    throw std::invalid_argument("exact solution dimension mismatch");
  ConvergenceTable table;
  for (int n : spec.resolutions) {
    const double h = 1.0 / n;
    Point lo{0.0, 0.0, 0.0}, hi{1.0, 1.0, 1.0};
    Mesh mesh = build_structured_mesh(lo, hi, {n, n, n}, spec.dim);

    SchemeConfig config;
    config.scheme = spec.scheme;
    config.elements = spec.elements;
    config.tau = spec.tau_law == TauLaw::H2 ? h * h : h;
    config.t_end = spec.t_end;
    config.solver_rel_tol = spec.solver_rel_tol;
    config.energy_monitor = spec.energy_monitor;

    ProblemDef def = manufactured_problem(exact, params);
    ProjectionScheme scheme(mesh, params, config, def);

    const auto t0 = std::chrono::steady_clock::now();
    TransientResult res = scheme.run_transient();
    const auto t1 = std::chrono::steady_clock::now();

    const double tend = res.state.t;
    ConvergenceRow row;
    row.inv_h = n;
    row.time_s = std::chrono::duration<double>(t1 - t0).count();

    Field uf(scheme.velocity_space(), res.state.u);
    Field pf(scheme.pressure_space(), res.state.p);
    Field wf(scheme.angular_space(), res.state.w);
    Field Tf(scheme.temperature_space(), res.state.T);

    ErrorNorms ue = error_norms(uf, exact.u, tend);
    // compare against the zero-mean shift of the exact pressure
    const double pmean =
        integrate(mesh, 2 * 3 + 3,
                  [&](const IntegrandPoint& ip) { return exact.p.value(ip.x, tend); }) /
        mesh.domain_volume();
    ErrorNorms pe = error_norms(pf, {exact.p}, tend, pmean);
    ErrorNorms we = error_norms(wf, exact.w, tend);
    ErrorNorms Te = error_norms(Tf, {exact.T}, tend);
    row.uL2 = ue.l2;
    row.uH1 = ue.h1_semi;
    row.pL2 = pe.l2;
    row.wL2 = we.l2;
    row.wH1 = we.h1_semi;
    row.TL2 = Te.l2;
    row.TH1 = Te.h1_semi;
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace tmflow
