// Acceptance suite: one function per criterion, each printing PASS/FAIL
// lines for its required bands. Run all with no arguments or a single one
// with --criterion N.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "tmflow/benchmarks.hpp"
#include "tmflow/convergence.hpp"
#include "tmflow/run.hpp"
#include "tmflow/selfcheck.hpp"

using namespace tmflow;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what,
            const std::string& detail) {
  std::printf("%s criterion %d: %-52s %s\n", pass ? "PASS" : "FAIL", criterion,
              what.c_str(), detail.c_str());
  if (!pass) ++g_failures;
}

bool in_band(double v, double lo, double hi) { return v >= lo && v <= hi; }

std::string fmt2(double a, double b) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "(%.2f, %.2f)", a, b);
  return buf;
}

struct StudyResult {
  ConvergenceTable table;
  double seconds = 0.0;
};

StudyResult run_study(SchemeKind scheme, int dim, std::vector<int> ns, TauLaw law,
                      double t_end) {
  StudySpec spec;
  spec.scheme = scheme;
  spec.elements = ElementPair::P1B_P1;
  spec.dim = dim;
  spec.resolutions = std::move(ns);
  spec.tau_law = law;
  spec.t_end = t_end;
  ExactSolution exact = dim == 2 ? exact_solution_2d() : exact_solution_3d();
  PhysicalParams params;
  const auto t0 = std::chrono::steady_clock::now();
  StudyResult out{run_convergence_study(spec, exact, params), 0.0};
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                    .count();
  return out;
}

void band_check(int crit, const char* name, const std::vector<double>& rates,
                double lo, double hi) {
  bool ok = true;
  std::string detail = "rates";
  char buf[32];
  for (double r : rates) {
    ok = ok && in_band(r, lo, hi);
    std::snprintf(buf, sizeof(buf), " %.2f", r);
    detail += buf;
  }
  detail += fmt2(lo, hi).insert(0, " vs band ");
  report(crit, ok, name, detail);
}

// ---------------------------------------------------------------------------

void criterion_1() {
  StudyResult r = run_study(SchemeKind::RPC1, 2, {10, 20, 40}, TauLaw::H2, 0.1);
  const auto rates = r.table.rates();
  std::vector<double> uL2, wL2, TL2, pL2, uH1, wH1, TH1;
  for (const auto& k : rates) {
    uL2.push_back(k.uL2);
    wL2.push_back(k.wL2);
    TL2.push_back(k.TL2);
    pL2.push_back(k.pL2);
    uH1.push_back(k.uH1);
    wH1.push_back(k.wH1);
    TH1.push_back(k.TH1);
  }
  band_check(1, "2D first-order u L2 rate", uL2, 1.85, 2.15);
  band_check(1, "2D first-order w L2 rate", wL2, 1.85, 2.15);
  band_check(1, "2D first-order T L2 rate", TL2, 1.85, 2.15);
  band_check(1, "2D first-order u H1 rate", uH1, 0.90, 1.10);
  band_check(1, "2D first-order w H1 rate", wH1, 0.90, 1.10);
  band_check(1, "2D first-order T H1 rate", TH1, 0.90, 1.10);
  band_check(1, "2D first-order p L2 rate", pL2, 1.30, 1.75);

  // published coarse-row errors; the triangulation pattern is not published,
  // so absolute values are only pinned to a factor of three
  const ConvergenceRow& row = r.table.rows[0];
  struct Ref {
    const char* name;
    double mine, paper;
  } refs[] = {{"uL2", row.uL2, 2.90e-3}, {"pL2", row.pL2, 8.36e-2},
              {"wL2", row.wL2, 1.86e-3}, {"TL2", row.TL2, 3.67e-3},
              {"uH1", row.uH1, 7.62e-2}, {"wH1", row.wH1, 6.09e-2},
              {"TH1", row.TH1, 9.16e-2}};
  for (const auto& ref : refs) {
    const double ratio = ref.mine / ref.paper;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "(%.3e vs %.3e, ratio %.2f)", ref.mine,
                  ref.paper, ratio);
    report(1, ratio >= 1.0 / 3.0 && ratio <= 3.0,
           std::string("2D first-order coarse-row |") + ref.name + "| factor",
           buf);
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "(%.1f s)", r.seconds);
  report(1, r.seconds <= 900.0, "2D first-order runtime within 15 min", buf);
}

void criterion_2() {
  StudyResult r = run_study(SchemeKind::RPC2, 2, {10, 20, 40}, TauLaw::H, 0.1);
  const auto rates = r.table.rates();
  std::vector<double> uL2, wL2, TL2, pL2;
  for (const auto& k : rates) {
    uL2.push_back(k.uL2);
    wL2.push_back(k.wL2);
    TL2.push_back(k.TL2);
    pL2.push_back(k.pL2);
  }
  band_check(2, "2D second-order u L2 rate", uL2, 1.85, 2.15);
  band_check(2, "2D second-order w L2 rate", wL2, 1.85, 2.15);
  band_check(2, "2D second-order T L2 rate", TL2, 1.85, 2.15);
  band_check(2, "2D second-order p L2 rate", pL2, 0.85, 1.15);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "(%.1f s)", r.seconds);
  report(2, r.seconds <= 120.0, "2D second-order runtime within 2 min", buf);
}

void criterion_3() {
  StudyResult r = run_study(SchemeKind::RPC1, 3, {4, 6, 8}, TauLaw::H2, 0.5);
  const auto rates = r.table.rates();
  std::vector<double> uL2, wL2, TL2, uH1, wH1, TH1;
  for (const auto& k : rates) {
    uL2.push_back(k.uL2);
    wL2.push_back(k.wL2);
    TL2.push_back(k.TL2);
    uH1.push_back(k.uH1);
    wH1.push_back(k.wH1);
    TH1.push_back(k.TH1);
  }
  band_check(3, "3D first-order u L2 rate", uL2, 1.80, 2.20);
  band_check(3, "3D first-order T L2 rate", TL2, 1.80, 2.20);
  band_check(3, "3D first-order w L2 rate", wL2, 1.70, 2.20);
  band_check(3, "3D first-order u H1 rate", uH1, 0.85, 1.20);
  band_check(3, "3D first-order w H1 rate", wH1, 0.85, 1.20);
  band_check(3, "3D first-order T H1 rate", TH1, 0.85, 1.20);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "(%.1f s)", r.seconds);
  report(3, r.seconds <= 1800.0, "3D first-order runtime within 30 min", buf);
}

void criterion_4() {
  StudyResult r = run_study(SchemeKind::RPC2, 3, {4, 6, 8}, TauLaw::H, 0.5);
  const auto rates = r.table.rates();
  std::vector<double> uL2;
  for (const auto& k : rates) uL2.push_back(k.uL2);
  band_check(4, "3D second-order u L2 rate", uL2, 1.85, 2.15);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "(%.1f s)", r.seconds);
  report(4, r.seconds <= 600.0, "3D second-order runtime within 10 min", buf);
}

void criterion_5() {
  Mesh mesh = build_structured_mesh({0, 0, 0}, {1, 1, 0}, {10, 10, 1}, 2);
  ExactSolution exact = exact_solution_2d();
  PhysicalParams params;
  ProblemDef def = manufactured_problem(exact, params);
  for (SchemeKind kind : {SchemeKind::SPC1, SchemeKind::RPC1, SchemeKind::RPC2}) {
    SchemeConfig cfg;
    cfg.scheme = kind;
    cfg.tau = 0.01;
    cfg.t_end = 0.1;
    cfg.energy_monitor = true;
    ProjectionScheme scheme(mesh, params, cfg, def);
    TransientResult res = scheme.run_transient();
    bool ok = true;
    double worst = -1e300;
    int worst_step = -1;
    for (const auto& row : res.monitor) {
      // the per-step inequality is a first-order-scheme statement; for the
      // second-order scheme only its bootstrap step runs that scheme
      if (kind == SchemeKind::RPC2 && row.step > 0) continue;
      if (!row.holds()) ok = false;
      if (row.residual / row.scale > worst) {
        worst = row.residual / row.scale;
        worst_step = row.step;
      }
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "(worst lhs-rhs %.2e of scale at step %d)",
                  worst, worst_step);
    report(5, ok,
           std::string("energy inequality holds for ") + scheme_name(kind), buf);
  }
}

void criterion_6() {
  struct Case {
    BenchmarkName name;
    double rayleigh;
    double t_end;
  };
  // the heated-floor channel has no published end time; 0.25 keeps the
  // three-Rayleigh sweep tractable while exercising hundreds of steps
  std::vector<Case> cases;
  for (double ray : {1e4, 1e5, 1e6}) cases.push_back({BenchmarkName::Benard2D, ray, 0.25});
  for (double ray : {1e4, 1e5, 1e6}) cases.push_back({BenchmarkName::Cavity2D, ray, 1.0});

  for (const auto& c : cases) {
    BenchmarkPreset preset = load_preset(c.name, c.rayleigh, 0, -1.0, c.t_end);
    Mesh mesh = build_structured_mesh(preset.lo, preset.hi, preset.cells, preset.dim);
    SchemeConfig cfg = preset.config;
    cfg.energy_monitor = false;
    char what[96];
    std::snprintf(what, sizeof(what), "%s at rayleigh %.0e completes",
                  benchmark_to_string(c.name), c.rayleigh);
    try {
      ProjectionScheme scheme(mesh, preset.params, cfg, preset.problem);
      TransientResult res = scheme.run_transient();
      const double nu = scheme.l2_norm_u(res.state.u);
      const double nw = scheme.l2_norm_w(res.state.w);
      const double nT = scheme.l2_norm_T(res.state.T);
      const bool finite = std::isfinite(nu) && std::isfinite(nw) && std::isfinite(nT);
      auto [lo, hi] = field_range(Field(scheme.temperature_space(), res.state.T));
      const bool in_range = lo >= -0.02 && hi <= 1.02;
      char buf[128];
      std::snprintf(buf, sizeof(buf), "(|u|=%.3e |w|=%.3e |T|=%.3e T in [%.3f, %.3f])",
                    nu, nw, nT, lo, hi);
      report(6, finite && in_range, what, buf);
    } catch (const StepFailure& e) {
      report(6, false, what, std::string("(solver failure: ") + e.what() + ")");
    }
  }
}

void criterion_7() {
  // pressure-gradient roughness next to the walls: the rotational update
  // should leave a weaker boundary layer than the standard one
  const double t_end = 0.1;  // boundary-layer contrast forms within a few steps
  double jumps[2] = {0.0, 0.0};
  int idx = 0;
  for (SchemeKind kind : {SchemeKind::RPC1, SchemeKind::SPC1}) {
    BenchmarkPreset preset = load_preset(BenchmarkName::Cavity2D, 1e4, 30, -1.0, t_end);
    Mesh mesh = build_structured_mesh(preset.lo, preset.hi, preset.cells, preset.dim);
    SchemeConfig cfg = preset.config;
    cfg.scheme = kind;
    cfg.energy_monitor = false;
    ProjectionScheme scheme(mesh, preset.params, cfg, preset.problem);
    TransientResult res = scheme.run_transient();
    jumps[idx++] = boundary_pressure_jump(Field(scheme.pressure_space(), res.state.p));
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "(rpc %.4e < spc %.4e)", jumps[0], jumps[1]);
  report(7, jumps[0] < jumps[1], "rotational update smooths the wall pressure", buf);
}

void criterion_8() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto results = run_self_checks();
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (const auto& r : results)
    report(8, r.pass, std::string("invariant: ") + r.name, "(" + r.detail + ")");
  char buf[64];
  std::snprintf(buf, sizeof(buf), "(%.1f s)", secs);
  report(8, secs < 60.0, "invariant suite under a minute", buf);
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
      only = std::atoi(argv[++i]);
  }
  void (*criteria[])() = {criterion_1, criterion_2, criterion_3, criterion_4,
                          criterion_5, criterion_6, criterion_7, criterion_8};
  if (only >= 1 && only <= 8) {
    criteria[only - 1]();
  } else {
    for (auto* fn : criteria) fn();
  }
  if (g_failures > 0) {
    std::printf("%d acceptance check(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance checks passed\n");
  return 0;
}
