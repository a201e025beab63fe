#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tmflow/assembly.hpp"
#include "tmflow/exact.hpp"
#include "tmflow/solver.hpp"

namespace tmflow {

enum class SchemeKind { SPC1, RPC1, RPC2 };
enum class ElementPair { P1B_P1, P2_P1 };

const char* scheme_name(SchemeKind k);

// Space/time provider of one Dirichlet value; null means homogeneous.
using VectorFn = std::function<void(const Point&, double, double*)>;
using ScalarFn = std::function<double(const Point&, double)>;

// Temperature boundary conditions: per box face either Dirichlet with a
// value provider or natural (zero-flux). Faces are applied in tag order, so
// higher tags win at shared corners and edges.
struct TemperatureBC {
  std::array<bool, 6> dirichlet{};
  std::array<ScalarFn, 6> value{};

  static TemperatureBC all_dirichlet(ScalarFn fn);
};

struct ProblemDef {
  VectorFn u_dirichlet;  // whole boundary; null = zero
  VectorFn w_dirichlet;
  TemperatureBC T_bc;

  VectorFn u0;
  VectorFn w0;
  ScalarFn T0;
  ScalarFn p0;

  std::function<void(const Point&, double, double*)> f1;  // null = zero
  std::function<void(const Point&, double, double*)> f2;
  ScalarFn f3;
};

struct SchemeConfig {
  SchemeKind scheme = SchemeKind::RPC1;
  ElementPair elements = ElementPair::P1B_P1;
  double tau = 1e-2;
  double t_end = 0.1;

  double solver_rel_tol = 1e-10;
  double solver_abs_tol = 1e-14;
  int solver_max_iter = 0;  // 0: 10 * n_dofs

  bool energy_monitor = true;
  bool with_convection = true;                 // test hook
  std::optional<double> rotational_coeff;      // test hook; default nu + nu_r

  void validate() const;
};

struct State {
  double t = 0.0;
  std::vector<double> u, p, w, T;
  std::vector<double> u_prev, w_prev, T_prev;  // level n-1, for BDF2
  std::vector<double> u_tilde, phi;            // scratch from the last step
};

// Terms of the per-step stability inequality, evaluated with discrete norms.
struct MonitorRow {
  int step = 0;
  double t = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;  // lhs - rhs
  double scale = 1.0;
  bool holds() const { return residual <= 1e-10 * scale; }
};

struct StepFailure : std::runtime_error {
  int step;
  SolveReport report;
  StepFailure(int step_, const std::string& what, const SolveReport& r)
      : std::runtime_error(what), step(step_), report(r) {}
};

struct TransientResult {
  State state;
  std::vector<MonitorRow> monitor;
  int steps = 0;
  double div_residual_max = 0.0;  // weak-divergence check, worst over steps
};

using StepCallback = std::function<void(int step, double t, const State&)>;

// Fractional-step solver for the coupled velocity / pressure / angular
// velocity / temperature system. Each time level runs four substeps:
// tentative velocity, pressure projection, angular velocity, temperature.
class ProjectionScheme {
 public:
  ProjectionScheme(const Mesh& mesh, const PhysicalParams& params,
                   const SchemeConfig& config, const ProblemDef& problem);

  const FunctionSpace& velocity_space() const { return *vel_; }
  const FunctionSpace& pressure_space() const { return *prs_; }
  const FunctionSpace& angular_space() const { return *ang_; }
  const FunctionSpace& temperature_space() const { return *tmp_; }

  State initial_state() const;

  // One BDF substep family. bdf1: lambda = (1, 1, 0); uniform bdf2:
  // (3/2, 2, -1/2). tau_n is the current step length.
  struct BdfCoeffs {
    double l0, l1, l2;
  };
  static BdfCoeffs bdf1() { return {1.0, 1.0, 0.0}; }
  static BdfCoeffs bdf2(double ratio);  // ratio = tau_n / tau_{n-1}

  std::vector<double> tentative_velocity_step(const State& s, const BdfCoeffs& c,
                                              double tau_n, double t_next,
                                              int step);
  struct ProjectionOut {
    std::vector<double> u, p, phi;
    double div_residual = 0.0;  // |(u_new, grad q)| over pressure dofs, l2
  };
  ProjectionOut projection_step(const std::vector<double>& u_tilde,
                                const State& s, bool rotational,
                                const BdfCoeffs& c, double tau_n, double t_next,
                                int step);
  std::vector<double> angular_step(const State& s, const std::vector<double>& u_new,
                                   const BdfCoeffs& c, double tau_n, double t_next,
                                   int step);
  std::vector<double> temperature_step(const State& s,
                                       const std::vector<double>& u_new,
                                       const std::vector<double>& w_new,
                                       const BdfCoeffs& c, double tau_n,
                                       double t_next, int step);

  TransientResult run_transient(const StepCallback& callback = nullptr,
                                int callback_every = 0);

  // Discrete norms used by the monitor and by diagnostics.
  double l2_norm_u(std::span<const double> x) const;
  double l2_norm_w(std::span<const double> x) const;
  double l2_norm_T(std::span<const double> x) const;
  double h1_semi_u(std::span<const double> x) const;
  double pressure_mean(std::span<const double> p) const;

  const PhysicalParams& params() const { return params_; }
  const SchemeConfig& config() const { return config_; }

 private:
  void setup_matrices();
  void setup_boundary();
  void monitor_setup();
  MonitorRow monitor_row(int step, double tau_n, double t_next, const State& prev,
                         const std::vector<double>& u_tilde, const State& next) const;
  std::vector<double> boundary_values_u(double t) const;
  std::vector<double> boundary_values_w(double t) const;
  void boundary_values_T(double t, std::vector<int>& dofs,
                         std::vector<double>& vals) const;
  SolverSpec spd_spec(int n) const;
  SolverSpec transport_spec(int n) const;

  const Mesh* mesh_;
  PhysicalParams params_;
  SchemeConfig config_;
  ProblemDef problem_;

  std::unique_ptr<FunctionSpace> vel_, prs_, ang_, tmp_;

  SparseMatrix Mu_, Au_, Sp_, Mp_, G_, GT_, PD_, PDT_, Mw_, Aw_, DDw_, MT_, AT_;
  SparseMatrix Rwv_;  // (curl w, v)
  SparseMatrix Rvw_;  // (curl u, zeta)

  std::vector<int> u_bdofs_, w_bdofs_;
  std::vector<Point> u_bpoints_, w_bpoints_;
  std::vector<int> T_bdofs_;
  std::vector<Point> T_bpoints_;
  std::vector<int> T_bface_;  // face tag providing each constrained dof

  std::vector<double> prs_int_;  // integral of each pressure basis function
  double volume_ = 0.0;

  // Poincare constants per field space, estimated from the mesh
  double cp_u_ = 1.0, cp_w_ = 1.0, cp_T_ = 1.0;
  bool monitor_ready_ = false;
};

// Smallest generalized eigenvalue of (stiffness, mass) on the zero-boundary
// subspace of a scalar space; 1/sqrt of it bounds ||v|| by ||grad v||.
double poincare_constant(const Mesh& mesh, Family family);

}  // namespace tmflow
