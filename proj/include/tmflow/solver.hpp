#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tmflow/sparse.hpp"

namespace tmflow {

enum class KrylovMethod { CG, BiCGStab, GMRES };
enum class Preconditioner { None, Jacobi };
enum class Nullspace { None, Constants };

struct SolverSpec {
  KrylovMethod method = KrylovMethod::CG;
  Preconditioner precond = Preconditioner::Jacobi;
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_iter = 0;  // 0: 10 * n
  Nullspace nullspace = Nullspace::None;
  int gmres_restart = 50;
};

struct SolveReport {
  int iterations = 0;
  double rel_residual = 0.0;  // recomputed from the final iterate
  bool converged = false;
  bool breakdown = false;
};

// Solves A x = b from the given initial guess. With Nullspace::Constants the
// right-hand side, initial guess and every preconditioned iterate are
// projected onto the zero-mean subspace; the returned solution has zero
// algebraic mean. The reported residual is recomputed independently of the
// solver recurrences.
SolveReport solve(const SparseMatrix& A, std::span<const double> b,
                  const SolverSpec& spec, std::vector<double>& x);

struct SolveFailure : std::runtime_error {
  SolveReport report;
  SolveFailure(const std::string& what, const SolveReport& r)
      : std::runtime_error(what), report(r) {}
};

// BiCGStab with a GMRES fallback on breakdown or stagnation; throws
// SolveFailure if neither converges.
SolveReport solve_or_throw(const SparseMatrix& A, std::span<const double> b,
                           const SolverSpec& spec, std::vector<double>& x,
                           const std::string& context);

}  // namespace tmflow
