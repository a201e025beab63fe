#include "tmflow/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace tmflow {

const char* scheme_name(SchemeKind k) {
  switch (k) {
    case SchemeKind::SPC1:
      return "spc1";
    case SchemeKind::RPC1:
      return "rpc1";
    case SchemeKind::RPC2:
      return "rpc2";
  }
  return "?";
}

TemperatureBC TemperatureBC::all_dirichlet(ScalarFn fn) {
  TemperatureBC bc;
  for (int f = 0; f < 6; ++f) {
    bc.dirichlet[f] = true;
    bc.value[f] = fn;
  }
  return bc;
}

void SchemeConfig::validate() const {
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  if (!(t_end >= tau)) throw std::invalid_argument("t_end must be at least tau");
}

ProjectionScheme::BdfCoeffs ProjectionScheme::bdf2(double r) {
  // Variable-step second-order backward differences; r = 1 gives
  // (3 u^{n+1} - 4 u^n + u^{n-1}) / (2 tau).
  return {(1.0 + 2.0 * r) / (1.0 + r), 1.0 + r, -r * r / (1.0 + r)};
}

ProjectionScheme::ProjectionScheme(const Mesh& mesh, const PhysicalParams& params,
                                   const SchemeConfig& config,
                                   const ProblemDef& problem)
    : mesh_(&mesh), params_(params), config_(config), problem_(problem) {
  params_.validate();
  config_.validate();
  const Family vf =
      config.elements == ElementPair::P1B_P1 ? Family::P1Bubble : Family::P2;
  const Family sf =
      config.elements == ElementPair::P1B_P1 ? Family::P1 : Family::P2;
  const int dim = mesh.dim;
  vel_ = std::make_unique<FunctionSpace>(mesh, vf, dim);
  prs_ = std::make_unique<FunctionSpace>(mesh, Family::P1, 1);
  ang_ = std::make_unique<FunctionSpace>(mesh, sf, dim == 2 ? 1 : 3);
  tmp_ = std::make_unique<FunctionSpace>(mesh, sf, 1);
  setup_matrices();
  setup_boundary();
}

void ProjectionScheme::setup_matrices() {
  Mu_ = assemble_bilinear(BilinearKind::Mass, *vel_, *vel_);
  Au_ = assemble_bilinear(BilinearKind::Stiffness, *vel_, *vel_);
  Sp_ = assemble_bilinear(BilinearKind::Stiffness, *prs_, *prs_);
  Mp_ = assemble_bilinear(BilinearKind::Mass, *prs_, *prs_);
  G_ = assemble_bilinear(BilinearKind::Grad, *prs_, *vel_);
  GT_ = G_.transposed();
  PD_ = assemble_bilinear(BilinearKind::PressureDiv, *prs_, *vel_);
  PDT_ = PD_.transposed();
  Mw_ = assemble_bilinear(BilinearKind::Mass, *ang_, *ang_);
  Aw_ = assemble_bilinear(BilinearKind::Stiffness, *ang_, *ang_);
  if (mesh_->dim == 3)
    DDw_ = assemble_bilinear(BilinearKind::DivDiv, *ang_, *ang_);
  MT_ = assemble_bilinear(BilinearKind::Mass, *tmp_, *tmp_);
  AT_ = assemble_bilinear(BilinearKind::Stiffness, *tmp_, *tmp_);
  Rwv_ = assemble_curl_coupling(*ang_, *vel_, CurlDirection::AngToVel);
  Rvw_ = assemble_curl_coupling(*vel_, *ang_, CurlDirection::VelToAng);

  std::vector<double> ones(prs_->n_dofs(), 1.0);
  prs_int_ = Mp_.apply(ones);
  volume_ = 0.0;
  for (double v : prs_int_) volume_ += v;
}

void ProjectionScheme::setup_boundary() {
  auto nodes_u = boundary_nodes(*vel_);
  for (int node : nodes_u) {
    u_bpoints_.push_back(vel_->node_point(node));
    for (int c = 0; c < vel_->components(); ++c)
      u_bdofs_.push_back(vel_->dof(node, c));
  }
  auto nodes_w = boundary_nodes(*ang_);
  for (int node : nodes_w) {
    w_bpoints_.push_back(ang_->node_point(node));
    for (int c = 0; c < ang_->components(); ++c)
      w_bdofs_.push_back(ang_->dof(node, c));
  }
  // Temperature: Dirichlet faces only, later tags overriding earlier ones
  // at shared corners and edges.
  auto by_tag = boundary_nodes_by_tag(*tmp_);
  std::vector<int> face_of(tmp_->n_dofs(), -1);
  for (int tag = 0; tag < 2 * mesh_->dim; ++tag) {
    if (!problem_.T_bc.dirichlet[tag]) continue;
    for (int node : by_tag[tag]) face_of[node] = tag;
  }
  for (int node = 0; node < tmp_->n_dofs(); ++node) {
    if (face_of[node] < 0) continue;
    T_bdofs_.push_back(node);
    T_bpoints_.push_back(tmp_->node_point(node));
    T_bface_.push_back(face_of[node]);
  }
}

std::vector<double> ProjectionScheme::boundary_values_u(double t) const {
  std::vector<double> vals;
  vals.reserve(u_bdofs_.size());
  double buf[3] = {0.0, 0.0, 0.0};
  for (const Point& p : u_bpoints_) {
    if (problem_.u_dirichlet)
      problem_.u_dirichlet(p, t, buf);
    else
      buf[0] = buf[1] = buf[2] = 0.0;
    for (int c = 0; c < vel_->components(); ++c) vals.push_back(buf[c]);
  }
  return vals;
}

std::vector<double> ProjectionScheme::boundary_values_w(double t) const {
  std::vector<double> vals;
  vals.reserve(w_bdofs_.size());
  double buf[3] = {0.0, 0.0, 0.0};
  for (const Point& p : w_bpoints_) {
    if (problem_.w_dirichlet)
      problem_.w_dirichlet(p, t, buf);
    else
      buf[0] = buf[1] = buf[2] = 0.0;
    for (int c = 0; c < ang_->components(); ++c) vals.push_back(buf[c]);
  }
  return vals;
}

void ProjectionScheme::boundary_values_T(double t, std::vector<int>& dofs,
                                         std::vector<double>& vals) const {
  dofs = T_bdofs_;
  vals.resize(dofs.size());
  for (size_t i = 0; i < dofs.size(); ++i) {
    const ScalarFn& fn = problem_.T_bc.value[T_bface_[i]];
    vals[i] = fn ? fn(T_bpoints_[i], t) : 0.0;
  }
}

State ProjectionScheme::initial_state() const {
  State s;
  s.t = 0.0;
  auto from_vec = [](const FunctionSpace& sp, const VectorFn& fn) {
    if (!fn) return std::vector<double>(sp.n_dofs(), 0.0);
    Field f = interpolate(sp, [&](const Point& p, int c) {
      double buf[3] = {0.0, 0.0, 0.0};
      fn(p, 0.0, buf);
      return buf[c];
    });
    return f.coeffs;
  };
  s.u = from_vec(*vel_, problem_.u0);
  s.w = from_vec(*ang_, problem_.w0);
  if (problem_.T0) {
    Field f = interpolate(*tmp_, [&](const Point& p, int) {
      return problem_.T0(p, 0.0);
    });
    s.T = f.coeffs;
  } else {
    s.T.assign(tmp_->n_dofs(), 0.0);
  }
  if (problem_.p0) {
    Field f = interpolate(*prs_, [&](const Point& p, int) {
      return problem_.p0(p, 0.0);
    });
    s.p = f.coeffs;
    const double mean = pressure_mean(s.p);
    for (double& v : s.p) v -= mean;
  } else {
    s.p.assign(prs_->n_dofs(), 0.0);
  }
  s.u_tilde.assign(vel_->n_dofs(), 0.0);
  s.phi.assign(prs_->n_dofs(), 0.0);
  return s;
}

SolverSpec ProjectionScheme::spd_spec(int n) const {
  SolverSpec sp;
  sp.method = KrylovMethod::CG;
  sp.precond = Preconditioner::Jacobi;
  sp.rel_tol = config_.solver_rel_tol;
  sp.abs_tol = config_.solver_abs_tol;
  sp.max_iter = config_.solver_max_iter > 0 ? config_.solver_max_iter : 10 * n;
  return sp;
}

SolverSpec ProjectionScheme::transport_spec(int n) const {
  SolverSpec sp = spd_spec(n);
  sp.method = KrylovMethod::BiCGStab;
  return sp;
}

std::vector<double> ProjectionScheme::tentative_velocity_step(
    const State& s, const BdfCoeffs& c, double tau_n, double t_next, int step) {
  const int n = vel_->n_dofs();
  std::vector<std::pair<double, const SparseMatrix*>> terms{
      {c.l0 / tau_n, &Mu_}, {params_.nu + params_.nu_r, &Au_}};
  SparseMatrix Nu;
  if (config_.with_convection) {
    Field adv(*vel_, s.u);
    Nu = assemble_convection(adv, *vel_, *vel_);
    terms.emplace_back(1.0, &Nu);
  }
  SparseMatrix A = SparseMatrix::weighted_sum(terms);

  // rhs: BDF history, lagged pressure gradient, angular curl source,
  // buoyancy with the previous temperature, external forcing.
  std::vector<double> combo(n);
  for (int i = 0; i < n; ++i)
    combo[i] = (c.l1 / tau_n) * s.u[i] + (c.l2 / tau_n) * (c.l2 != 0.0 ? s.u_prev[i] : 0.0);
  std::vector<double> rhs = Mu_.apply(combo);
  std::vector<double> gp = G_.apply(s.p);
  for (int i = 0; i < n; ++i) rhs[i] -= gp[i];
  std::vector<double> cw = Rwv_.apply(s.w);
  for (int i = 0; i < n; ++i) rhs[i] += 2.0 * params_.nu_r * cw[i];

  if (params_.e_hat != 0.0) {
    Field Tn(*tmp_, s.T);
    const int up = mesh_->dim - 1;
    auto buoy = assemble_functional(
        *vel_,
        [&](const IntegrandPoint& ip, double* out) {
          for (int a = 0; a < 3; ++a) out[a] = 0.0;
          out[up] = params_.e_hat * Tn.eval(ip.cell, ip.bary, 0);
        });
    for (int i = 0; i < n; ++i) rhs[i] += buoy[i];
  }
  if (problem_.f1) {
    auto f = assemble_functional(*vel_, [&](const IntegrandPoint& ip, double* out) {
      problem_.f1(ip.x, t_next, out);
    });
    for (int i = 0; i < n; ++i) rhs[i] += f[i];
  }

  apply_dirichlet(A, rhs, u_bdofs_, boundary_values_u(t_next));
  std::vector<double> x = s.u;
  try {
    solve_or_throw(A, rhs, transport_spec(n), x, "tentative velocity");
  } catch (const SolveFailure& e) {
    throw StepFailure(step, e.what(), e.report);
  }
  return x;
}

ProjectionScheme::ProjectionOut ProjectionScheme::projection_step(
    const std::vector<double>& u_tilde, const State& s, bool rotational,
    const BdfCoeffs& c, double tau_n, double t_next, int step) {
  ProjectionOut out;
  const int np = prs_->n_dofs();
  const int n = vel_->n_dofs();

  // Pressure Poisson problem for the potential, natural boundary data.
  // The divergence form of the right-hand side keeps the boundary flux of
  // the tentative velocity: it equals (u_tilde, grad q) when the boundary
  // data are homogeneous and stays consistent when they are not.
  std::vector<double> rhs_phi = PDT_.apply(u_tilde);
  for (double& v : rhs_phi) v *= -c.l0 / tau_n;
  SolverSpec pspec = spd_spec(np);
  pspec.nullspace = Nullspace::Constants;
  out.phi = s.phi;
  SolveReport prep;
  try {
    prep = solve_or_throw(Sp_, rhs_phi, pspec, out.phi, "pressure poisson");
  } catch (const SolveFailure& e) {
    throw StepFailure(step, e.what(), e.report);
  }
  // Weak-divergence residual of the updated velocity, relative scale.
  {
    std::vector<double> r = Sp_.apply(out.phi);
    double rn = 0.0, bn = 0.0;
    for (int i = 0; i < np; ++i) {
      const double d = rhs_phi[i] - r[i];
      rn += d * d;
      bn += rhs_phi[i] * rhs_phi[i];
    }
    out.div_residual = bn > 0.0 ? std::sqrt(rn / bn) : 0.0;
  }

  // End-of-step velocity: L2 projection of u_tilde - (tau/l0) grad(phi)
  // onto the velocity space with its Dirichlet data.
  std::vector<double> rhs_u = Mu_.apply(u_tilde);
  std::vector<double> gphi = G_.apply(out.phi);
  for (int i = 0; i < n; ++i) rhs_u[i] -= (tau_n / c.l0) * gphi[i];
  out.u = u_tilde;
  try {
    solve_or_throw(Mu_, rhs_u, spd_spec(n), out.u, "velocity projection");
  } catch (const SolveFailure& e) {
    throw StepFailure(step, e.what(), e.report);
  }

  // Pressure update; the rotational form subtracts the projected divergence.
  out.p = s.p;
  for (int i = 0; i < np; ++i) out.p[i] += out.phi[i];
  if (rotational) {
    const double rc = config_.rotational_coeff.value_or(params_.nu + params_.nu_r);
    std::vector<double> rhs_z = PDT_.apply(u_tilde);
    std::vector<double> z(np, 0.0);
    try {
      solve_or_throw(Mp_, rhs_z, spd_spec(np), z, "divergence projection");
    } catch (const SolveFailure& e) {
      throw StepFailure(step, e.what(), e.report);
    }
    for (int i = 0; i < np; ++i) out.p[i] -= rc * z[i];
  }
  const double mean = pressure_mean(out.p);
  for (double& v : out.p) v -= mean;
  return out;
}

std::vector<double> ProjectionScheme::angular_step(const State& s,
                                                   const std::vector<double>& u_new,
                                                   const BdfCoeffs& c, double tau_n,
                                                   double t_next, int step) {
  const int n = ang_->n_dofs();
  std::vector<std::pair<double, const SparseMatrix*>> terms{
      {c.l0 / tau_n + 4.0 * params_.nu_r, &Mw_}, {params_.alpha, &Aw_}};
  if (mesh_->dim == 3) terms.emplace_back(params_.beta, &DDw_);
  SparseMatrix Nw;
  if (config_.with_convection) {
    Field adv(*vel_, u_new);
    Nw = assemble_convection(adv, *ang_, *ang_);
    terms.emplace_back(1.0, &Nw);
  }
  SparseMatrix A = SparseMatrix::weighted_sum(terms);

  std::vector<double> combo(n);
  for (int i = 0; i < n; ++i)
    combo[i] = (c.l1 / tau_n) * s.w[i] + (c.l2 / tau_n) * (c.l2 != 0.0 ? s.w_prev[i] : 0.0);
  std::vector<double> rhs = Mw_.apply(combo);
  std::vector<double> cu = Rvw_.apply(u_new);
  for (int i = 0; i < n; ++i) rhs[i] += 2.0 * params_.nu_r * cu[i];
  if (problem_.f2) {
    auto f = assemble_functional(*ang_, [&](const IntegrandPoint& ip, double* out) {
      problem_.f2(ip.x, t_next, out);
    });
    for (int i = 0; i < n; ++i) rhs[i] += f[i];
  }

  apply_dirichlet(A, rhs, w_bdofs_, boundary_values_w(t_next));
  std::vector<double> x = s.w;
  try {
    solve_or_throw(A, rhs, transport_spec(n), x, "angular velocity");
  } catch (const SolveFailure& e) {
    throw StepFailure(step, e.what(), e.report);
  }
  return x;
}

std::vector<double> ProjectionScheme::temperature_step(
    const State& s, const std::vector<double>& u_new,
    const std::vector<double>& w_new, const BdfCoeffs& c, double tau_n,
    double t_next, int step) {
  const int n = tmp_->n_dofs();
  std::vector<std::pair<double, const SparseMatrix*>> terms{
      {c.l0 / tau_n, &MT_}, {params_.kappa, &AT_}};
  SparseMatrix NT;
  if (config_.with_convection) {
    Field adv(*vel_, u_new);
    NT = assemble_convection(adv, *tmp_, *tmp_);
    terms.emplace_back(1.0, &NT);
  }
  Field wf(*ang_, w_new);
  SparseMatrix SC = assemble_thermal_curl(wf, *tmp_, *tmp_);
  terms.emplace_back(-params_.D, &SC);
  SparseMatrix A = SparseMatrix::weighted_sum(terms);

  std::vector<double> combo(n);
  for (int i = 0; i < n; ++i)
    combo[i] = (c.l1 / tau_n) * s.T[i] + (c.l2 / tau_n) * (c.l2 != 0.0 ? s.T_prev[i] : 0.0);
  std::vector<double> rhs = MT_.apply(combo);
  if (problem_.f3) {
    auto f = assemble_functional(*tmp_, [&](const IntegrandPoint& ip, double* out) {
      out[0] = problem_.f3(ip.x, t_next);
    });
    for (int i = 0; i < n; ++i) rhs[i] += f[i];
  }

  std::vector<int> dofs;
  std::vector<double> vals;
  boundary_values_T(t_next, dofs, vals);
  apply_dirichlet(A, rhs, dofs, vals);
  std::vector<double> x = s.T;
  try {
    solve_or_throw(A, rhs, transport_spec(n), x, "temperature");
  } catch (const SolveFailure& e) {
    throw StepFailure(step, e.what(), e.report);
  }
  return x;
}

void ProjectionScheme::monitor_setup() {
  if (monitor_ready_) return;
  cp_u_ = poincare_constant(*mesh_, vel_->family());
  cp_w_ = poincare_constant(*mesh_, ang_->family());
  cp_T_ = poincare_constant(*mesh_, tmp_->family());
  monitor_ready_ = true;
}

MonitorRow ProjectionScheme::monitor_row(int step, double tau_n, double t_next,
                                         const State& prev,
                                         const std::vector<double>& u_tilde,
                                         const State& next) const {
  MonitorRow row;
  row.step = step;
  row.t = t_next;
  auto sq = [](double v) { return v * v; };

  const int nu_dofs = vel_->n_dofs();
  std::vector<double> du(nu_dofs);
  for (int i = 0; i < nu_dofs; ++i) du[i] = u_tilde[i] - prev.u[i];
  const int nw_dofs = ang_->n_dofs();
  std::vector<double> dw(nw_dofs);
  for (int i = 0; i < nw_dofs; ++i) dw[i] = next.w[i] - prev.w[i];
  const int nT_dofs = tmp_->n_dofs();
  std::vector<double> dT(nT_dofs);
  for (int i = 0; i < nT_dofs; ++i) dT[i] = next.T[i] - prev.T[i];

  double lhs = 0.0, scale = 0.0;
  auto add_lhs = [&](double v) {
    lhs += v;
    scale += std::abs(v);
  };
  add_lhs(Mu_.quad_form(u_tilde, u_tilde) - Mu_.quad_form(prev.u, prev.u));
  add_lhs(Mu_.quad_form(du, du));
  add_lhs(Mw_.quad_form(next.w, next.w) - Mw_.quad_form(prev.w, prev.w));
  add_lhs(Mw_.quad_form(dw, dw));
  add_lhs(MT_.quad_form(next.T, next.T) - MT_.quad_form(prev.T, prev.T));
  add_lhs(MT_.quad_form(dT, dT));
  add_lhs(params_.nu * tau_n * Au_.quad_form(u_tilde, u_tilde));
  add_lhs(params_.alpha * tau_n * Aw_.quad_form(next.w, next.w));
  add_lhs(params_.kappa * tau_n * AT_.quad_form(next.T, next.T));
  add_lhs(4.0 * params_.nu_r * tau_n * Mw_.quad_form(next.w, next.w));
  add_lhs(tau_n * tau_n *
          (Sp_.quad_form(next.p, next.p) - Sp_.quad_form(prev.p, prev.p)));
  if (mesh_->dim == 3)
    add_lhs(2.0 * params_.beta * tau_n * DDw_.quad_form(next.w, next.w));

  // Forcing norms at the new time level; constants from the Young splittings
  // with the mesh Poincare constants.
  const double c1 = 2.0 * sq(cp_u_) / params_.nu;
  const double c2 = sq(cp_w_) / params_.alpha;
  const double c3 = sq(cp_T_) / params_.kappa;
  const double cT = 2.0 * sq(params_.e_hat) * sq(cp_u_) / params_.nu;

  double rhs = 0.0;
  auto add_rhs = [&](double v) {
    rhs += v;
    scale += std::abs(v);
  };
  const int deg = functional_quad_degree(*vel_);
  if (problem_.f1) {
    const double f1sq = integrate(*mesh_, deg, [&](const IntegrandPoint& ip) {
      double buf[3] = {0.0, 0.0, 0.0};
      problem_.f1(ip.x, t_next, buf);
      double s = 0.0;
      for (int c = 0; c < mesh_->dim; ++c) s += buf[c] * buf[c];
      return s;
    });
    add_rhs(c1 * tau_n * f1sq);
  }
  if (problem_.f2) {
    const double f2sq = integrate(*mesh_, deg, [&](const IntegrandPoint& ip) {
      double buf[3] = {0.0, 0.0, 0.0};
      problem_.f2(ip.x, t_next, buf);
      double s = 0.0;
      for (int c = 0; c < ang_->components(); ++c) s += buf[c] * buf[c];
      return s;
    });
    add_rhs(c2 * tau_n * f2sq);
  }
  if (problem_.f3) {
    const double f3sq = integrate(*mesh_, deg, [&](const IntegrandPoint& ip) {
      return sq(problem_.f3(ip.x, t_next));
    });
    add_rhs(c3 * tau_n * f3sq);
  }
  add_rhs(cT * tau_n * MT_.quad_form(prev.T, prev.T));
  add_rhs(4.0 * params_.nu_r * tau_n * Mw_.quad_form(prev.w, prev.w));

  row.lhs = lhs;
  row.rhs = rhs;
  row.residual = lhs - rhs;
  row.scale = std::max(scale, 1e-30);
  return row;
}

TransientResult ProjectionScheme::run_transient(const StepCallback& callback,
                                                int callback_every) {
  TransientResult result;
  State s = initial_state();
  if (config_.energy_monitor) monitor_setup();
  if (callback && callback_every > 0) callback(0, 0.0, s);

  const double tau = config_.tau;
  const double t_end = config_.t_end;
  const int n_steps = static_cast<int>(std::ceil(t_end / tau - 1e-9));
  double tau_prev = tau;
  const bool rotational = config_.scheme != SchemeKind::SPC1;

  for (int n = 0; n < n_steps; ++n) {
    const double t_next = (n == n_steps - 1) ? t_end : (n + 1) * tau;
    const double tau_n = t_next - s.t;
    const bool use_bdf2 = config_.scheme == SchemeKind::RPC2 && n > 0;
    const BdfCoeffs coeffs = use_bdf2 ? bdf2(tau_n / tau_prev) : bdf1();

    std::vector<double> u_tilde = tentative_velocity_step(s, coeffs, tau_n, t_next, n);
    ProjectionOut proj = projection_step(u_tilde, s, rotational, coeffs, tau_n, t_next, n);
    std::vector<double> w_new = angular_step(s, proj.u, coeffs, tau_n, t_next, n);
    std::vector<double> T_new =
        temperature_step(s, proj.u, w_new, coeffs, tau_n, t_next, n);

    result.div_residual_max = std::max(result.div_residual_max, proj.div_residual);

    State next;
    next.t = t_next;
    next.u = std::move(proj.u);
    next.p = std::move(proj.p);
    next.w = std::move(w_new);
    next.T = std::move(T_new);
    if (config_.energy_monitor)
      result.monitor.push_back(monitor_row(n, tau_n, t_next, s, u_tilde, next));

    next.u_prev = std::move(s.u);
    next.w_prev = std::move(s.w);
    next.T_prev = std::move(s.T);
    next.u_tilde = std::move(u_tilde);
    next.phi = std::move(proj.phi);
    s = std::move(next);
    tau_prev = tau_n;

    if (callback && callback_every > 0 &&
        ((n + 1) % callback_every == 0 || n == n_steps - 1))
      callback(n + 1, t_next, s);
  }
  result.steps = n_steps;
  result.state = std::move(s);
  return result;
}

double ProjectionScheme::l2_norm_u(std::span<const double> x) const {
  return std::sqrt(std::max(0.0, Mu_.quad_form(x, x)));
}
double ProjectionScheme::l2_norm_w(std::span<const double> x) const {
  return std::sqrt(std::max(0.0, Mw_.quad_form(x, x)));
}
double ProjectionScheme::l2_norm_T(std::span<const double> x) const {
  return std::sqrt(std::max(0.0, MT_.quad_form(x, x)));
}
double ProjectionScheme::h1_semi_u(std::span<const double> x) const {
  return std::sqrt(std::max(0.0, Au_.quad_form(x, x)));
}
double ProjectionScheme::pressure_mean(std::span<const double> p) const {
  double m = 0.0;
  for (size_t i = 0; i < p.size(); ++i) m += prs_int_[i] * p[i];
  return m / volume_;
}

double poincare_constant(const Mesh& mesh, Family family) {
  FunctionSpace sp(mesh, family, 1);
  SparseMatrix S = assemble_bilinear(BilinearKind::Stiffness, sp, sp);
  SparseMatrix M = assemble_bilinear(BilinearKind::Mass, sp, sp);

  // Restrict to the zero-boundary subspace.
  std::vector<char> bd(sp.n_dofs(), 0);
  for (int node : boundary_nodes(sp)) bd[node] = 1;
  std::vector<int> idx(sp.n_dofs(), -1);
  int m = 0;
  for (int i = 0; i < sp.n_dofs(); ++i)
    if (!bd[i]) idx[i] = m++;
  auto restrict_mat = [&](const SparseMatrix& A) {
    std::vector<Triplet> t;
    for (int r = 0; r < A.rows; ++r) {
      if (bd[r]) continue;
      for (int k = A.row_ptr[r]; k < A.row_ptr[r + 1]; ++k)
        if (!bd[A.col_idx[k]]) t.push_back({idx[r], idx[A.col_idx[k]], A.vals[k]});
    }
    return SparseMatrix::from_triplets(m, m, std::move(t));
  };
  SparseMatrix Si = restrict_mat(S);
  SparseMatrix Mi = restrict_mat(M);

  // Inverse power iteration for the smallest eigenvalue of S x = lambda M x.
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> x(m);
  for (double& v : x) v = dist(rng);
  SolverSpec spec;
  spec.method = KrylovMethod::CG;
  spec.precond = Preconditioner::Jacobi;
  spec.rel_tol = 1e-10;
  spec.abs_tol = 1e-14;
  spec.max_iter = 20 * m + 100;
  double lambda = 0.0;
  for (int it = 0; it < 60; ++it) {
    std::vector<double> y = Mi.apply(x);
    std::vector<double> z = x;
    solve(Si, y, spec, z);
    const double zMz = Mi.quad_form(z, z);
    const double nrm = std::sqrt(zMz);
    for (double& v : z) v /= nrm;
    const double lam = Si.quad_form(z, z) / Mi.quad_form(z, z);
    x = std::move(z);
    if (it > 2 && std::abs(lam - lambda) <= 1e-9 * lam) {
      lambda = lam;
      break;
    }
    lambda = lam;
  }
  return 1.0 / std::sqrt(lambda);
}

}  // namespace tmflow
