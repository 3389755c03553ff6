#pragma once

#include <memory>
#include <string>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "effpot/operator.hpp"

namespace effpot {

/// Factor-once, solve-many wrapper for symmetric positive definite sparse systems.
///
/// Up to `direct_max_dof` unknowns a simplicial LDL^T factorization (AMD ordering)
/// is used; above it, conjugate gradients with an incomplete Cholesky preconditioner.
class SpdSolver {
 public:
  static constexpr Index kDefaultDirectMaxDof = 300000;

  explicit SpdSolver(const SparseMatrix& A, Index direct_max_dof = kDefaultDirectMaxDof,
                     double iterative_tol = 1e-14);
  ~SpdSolver();
  SpdSolver(SpdSolver&&) noexcept;
  SpdSolver& operator=(SpdSolver&&) noexcept;

  /// Solve with up to `refinement_steps` rounds of iterative refinement.
  Eigen::VectorXd solve(const Eigen::VectorXd& b, int refinement_steps = 2) const;

  bool direct() const noexcept;
  /// "direct-ldlt" or "pcg".
  std::string method() const;
  /// Iterations used by the last iterative solve (0 for direct).
  int last_iterations() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Number of negative pivots of LDL^T(A - sigma*diag(mass)): by Sylvester's law of
/// inertia, the count of generalized eigenvalues of (A, M) strictly below sigma.
/// Returns -1 if the unpivoted factorization meets an exact zero pivot.
Index inertia_below(const SparseMatrix& A, const Eigen::VectorXd& mass, double sigma);

}  // namespace effpot
