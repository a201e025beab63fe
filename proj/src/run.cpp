#include "tmflow/run.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "tmflow/profile.hpp"
#include "tmflow/vtk.hpp"

namespace tmflow {

namespace {

SchemeKind scheme_from_string(const std::string& s) {
  if (s == "spc1") return SchemeKind::SPC1;
  if (s == "rpc1") return SchemeKind::RPC1;
  if (s == "rpc2") return SchemeKind::RPC2;
  throw ManifestError("unknown scheme: " + s);
}

}  // namespace

RunSetup setup_from_manifest(const RunManifest& m) {
  RunSetup s;
  if (!m.manufactured.empty()) {
    s.exact = m.manufactured == "ms2d" ? exact_solution_2d() : exact_solution_3d();
    const int dim = s.exact->dim;
    const int n = m.n.front();
    s.resolution = n;
    s.mesh = build_structured_mesh({0, 0, 0}, {1, 1, 1}, {n, n, n}, dim);
    s.params = m.physics;
    s.config.elements = m.elements == "p2-p1" ? ElementPair::P2_P1 : ElementPair::P1B_P1;
    const double h = 1.0 / n;
    s.config.tau = m.tau > 0.0 ? m.tau : (m.tau_law == "h" ? h : h * h);
    s.config.t_end = m.tend > 0.0 ? m.tend : 0.1;
    s.problem = manufactured_problem(*s.exact, s.params);
  } else {
    const BenchmarkName name = benchmark_from_string(m.preset);
    const double ray = m.rayleigh_override.value_or(-1.0);
    const int res = m.n.empty() ? 0 : m.n.front();
    BenchmarkPreset preset = load_preset(name, ray, res, m.tau, m.tend);
    s.preset = name;
    s.resolution = res > 0 ? res : preset.cells[1];
    s.mesh = build_structured_mesh(preset.lo, preset.hi, preset.cells, preset.dim);
    s.params = preset.params;
    if (m.physics_set) {
      s.params = m.physics;
      if (!m.rayleigh_override) s.params.e_hat = preset.params.e_hat;
    }
    s.config = preset.config;
    if (!m.elements.empty())
      s.config.elements =
          m.elements == "p1b-p1" ? ElementPair::P1B_P1 : ElementPair::P2_P1;
    s.problem = preset.problem;
  }
  s.config.scheme = scheme_from_string(m.scheme);
  s.config.solver_rel_tol = m.rel_tol;
  s.config.solver_max_iter = m.max_iter;
  return s;
}

TransientResult run_solve(const RunManifest& m, std::ostream& log) {
  namespace fs = std::filesystem;
  RunSetup setup = setup_from_manifest(m);
  fs::create_directories(m.out_dir);
  std::ofstream run_log(fs::path(m.out_dir) / "run.log");

  auto say = [&](const std::string& line) {
    log << line << "\n";
    run_log << line << "\n";
  };
  for (const auto& d : m.applied_defaults) say("default applied: " + d);
  say("scheme = " + std::string(scheme_name(setup.config.scheme)));
  say("problem = " + (setup.preset ? std::string(benchmark_to_string(*setup.preset))
                                   : setup.exact->name));
  char buf[256];
  std::snprintf(buf, sizeof(buf), "mesh: dim=%d cells=%d vertices=%d h=%.6g",
                setup.mesh.dim, setup.mesh.n_cells(), setup.mesh.n_vertices(),
                setup.mesh.h);
  say(buf);
  std::snprintf(buf, sizeof(buf), "tau=%.6g tend=%.6g e_hat=%.6g",
                setup.config.tau, setup.config.t_end, setup.params.e_hat);
  say(buf);

  ProjectionScheme scheme(setup.mesh, setup.params, setup.config, setup.problem);
  std::snprintf(buf, sizeof(buf), "dofs: u=%d p=%d w=%d T=%d",
                scheme.velocity_space().n_dofs(), scheme.pressure_space().n_dofs(),
                scheme.angular_space().n_dofs(), scheme.temperature_space().n_dofs());
  say(buf);

  StepCallback cb;
  int cadence = m.every;
  if (cadence <= 0) cadence = 0;
  if (m.vtk && cadence > 0) {
    cb = [&](int step, double t, const State& st) {
      Field uf(scheme.velocity_space(), st.u);
      Field pf(scheme.pressure_space(), st.p);
      Field wf(scheme.angular_space(), st.w);
      Field Tf(scheme.temperature_space(), st.T);
      write_vtk((fs::path(m.out_dir) / ("fields_" + std::to_string(step) + ".vtk")).string(),
                uf, pf, wf, Tf);
      (void)t;
    };
  }

  const auto t0 = std::chrono::steady_clock::now();
  TransientResult res = scheme.run_transient(cb, cadence);
  const auto t1 = std::chrono::steady_clock::now();
  std::snprintf(buf, sizeof(buf), "steps=%d wall=%.2fs max weak-divergence residual=%.3e",
                res.steps, std::chrono::duration<double>(t1 - t0).count(),
                res.div_residual_max);
  say(buf);

  // final fields
  Field uf(scheme.velocity_space(), res.state.u);
  Field pf(scheme.pressure_space(), res.state.p);
  Field wf(scheme.angular_space(), res.state.w);
  Field Tf(scheme.temperature_space(), res.state.T);
  if (m.vtk)
    write_vtk((fs::path(m.out_dir) / ("fields_" + std::to_string(res.steps) + ".vtk")).string(),
              uf, pf, wf, Tf);

  {
    std::ofstream mon(fs::path(m.out_dir) / "energy_monitor.csv");
    mon << "step,t,lhs,rhs,residual,scale\n";
    for (const auto& r : res.monitor) {
      std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.step,
                    r.t, r.lhs, r.rhs, r.residual, r.scale);
      mon << buf;
    }
  }

  if (m.profiles && setup.mesh.dim == 2) {
    const double xm = 0.5 * (setup.mesh.lo[0] + setup.mesh.hi[0]);
    const double ym = 0.5 * (setup.mesh.lo[1] + setup.mesh.hi[1]);
    auto write = [&](const std::string& name, const std::vector<ProfileSample>& ps) {
      std::ofstream os(fs::path(m.out_dir) / name);
      write_profile_csv(os, ps);
    };
    write("profile_vertical_velocity_midline.csv",
          extract_profile(uf, 1, {xm, setup.mesh.lo[1], 0.0}, {xm, setup.mesh.hi[1], 0.0}));
    write("profile_horizontal_velocity_midline.csv",
          extract_profile(uf, 0, {setup.mesh.lo[0], ym, 0.0}, {setup.mesh.hi[0], ym, 0.0}));
    write("profile_temperature_midline.csv",
          extract_profile(Tf, 0, {setup.mesh.lo[0], ym, 0.0}, {setup.mesh.hi[0], ym, 0.0}));
  }

  std::snprintf(buf, sizeof(buf), "final |u|=%.6e |w|=%.6e |T|=%.6e",
                scheme.l2_norm_u(res.state.u), scheme.l2_norm_w(res.state.w),
                scheme.l2_norm_T(res.state.T));
  say(buf);

  if (setup.exact) {
    const double tend = res.state.t;
    const double pmean =
        integrate(setup.mesh, 9,
                  [&](const IntegrandPoint& ip) { return setup.exact->p.value(ip.x, tend); }) /
        setup.mesh.domain_volume();
    ErrorNorms ue = error_norms(uf, setup.exact->u, tend);
    ErrorNorms pe = error_norms(pf, {setup.exact->p}, tend, pmean);
    ErrorNorms we = error_norms(wf, setup.exact->w, tend);
    ErrorNorms Te = error_norms(Tf, {setup.exact->T}, tend);
    std::snprintf(buf, sizeof(buf),
                  "errors: uL2=%.3e pL2=%.3e wL2=%.3e TL2=%.3e uH1=%.3e wH1=%.3e TH1=%.3e",
                  ue.l2, pe.l2, we.l2, Te.l2, ue.h1_semi, we.h1_semi, Te.h1_semi);
    say(buf);
  }
  return res;
}

ConvergenceTable run_convergence(const RunManifest& m, std::ostream& log) {
  namespace fs = std::filesystem;
  if (m.manufactured.empty())
    throw ManifestError("convergence mode needs a manufactured problem");
  ExactSolution exact =
      m.manufactured == "ms2d" ? exact_solution_2d() : exact_solution_3d();

  StudySpec spec;
  spec.scheme = scheme_from_string(m.scheme);
  spec.elements = m.elements == "p2-p1" ? ElementPair::P2_P1 : ElementPair::P1B_P1;
  spec.dim = exact.dim;
  spec.resolutions = m.n;
  spec.tau_law = m.tau_law == "h" ? TauLaw::H : TauLaw::H2;
  spec.t_end = m.tend > 0.0 ? m.tend : (exact.dim == 2 ? 0.1 : 0.5);
  spec.solver_rel_tol = m.rel_tol;

  for (const auto& d : m.applied_defaults) log << "default applied: " << d << "\n";
  ConvergenceTable table = run_convergence_study(spec, exact, m.physics);

  fs::create_directories(m.out_dir);
  std::ofstream csv(fs::path(m.out_dir) / "table.csv");
  table.write_csv(csv);
  log << table.to_text();
  return table;
}

}  // namespace tmflow
