#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tmflow/scheme.hpp"

namespace tmflow {

struct ErrorNorms {
  double l2 = 0.0;
  double h1_semi = 0.0;
};

// Quadrature errors of a discrete field against closed-form components at
// time t. For multi-component fields the component norms are summed.
ErrorNorms error_norms(const Field& field, const std::vector<ScalarExact>& exact,
                       double t, double subtract_mean = 0.0);

// log(E_i / E_{i+1}) / log(h_i / h_{i+1})
double convergence_rate(double e_coarse, double e_fine, double h_coarse,
                        double h_fine);

enum class TauLaw { H, H2 };

struct ConvergenceRow {
  int inv_h = 0;
  double uL2 = 0.0, pL2 = 0.0, wL2 = 0.0, TL2 = 0.0;
  double uH1 = 0.0, wH1 = 0.0, TH1 = 0.0;
  double time_s = 0.0;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;

  // Rates between consecutive rows (size rows-1), same column layout.
  struct Rates {
    double uL2, pL2, wL2, TL2, uH1, wH1, TH1;
  };
  std::vector<Rates> rates() const;

  void write_csv(std::ostream& os) const;
  std::string to_text() const;
};

struct StudySpec {
  SchemeKind scheme = SchemeKind::RPC1;
  ElementPair elements = ElementPair::P1B_P1;
  int dim = 2;
  std::vector<int> resolutions;  // cells per axis, h = 1/n
  TauLaw tau_law = TauLaw::H2;
  double t_end = 0.1;
  double solver_rel_tol = 1e-10;
  bool energy_monitor = false;
};

ProblemDef manufactured_problem(const ExactSolution& exact,
                                const PhysicalParams& params);

ConvergenceTable run_convergence_study(const StudySpec& spec,
                                       const ExactSolution& exact,
                                       const PhysicalParams& params);

}  // namespace tmflow
