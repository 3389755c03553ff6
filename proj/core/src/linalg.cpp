#include "effpot/linalg.hpp"

#include <cmath>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>

#include "effpot/errors.hpp"

namespace effpot {

struct SpdSolver::Impl {
  const SparseMatrix* A = nullptr;
  SparseMatrix owned;
  std::unique_ptr<Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>>> ldlt;
  std::unique_ptr<Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper,
                                           Eigen::IncompleteCholesky<double>>>
      cg;
  mutable int iterations = 0;
};

SpdSolver::SpdSolver(const SparseMatrix& A, Index direct_max_dof, double iterative_tol)
    : impl_(std::make_unique<Impl>()) {
  impl_->owned = A;
  impl_->A = &impl_->owned;
  if (A.rows() <= direct_max_dof) {
    impl_->ldlt = std::make_unique<decltype(impl_->ldlt)::element_type>();
    impl_->ldlt->compute(impl_->owned);
    if (impl_->ldlt->info() != Eigen::Success) {
      throw Error(ErrorCode::DegeneratePotential, "LDL^T factorization failed (matrix singular?)");
    }
    if ((impl_->ldlt->vectorD().array() <= 0.0).any()) {
      throw Error(ErrorCode::DegeneratePotential, "matrix is not positive definite");
    }
  } else {
    impl_->cg = std::make_unique<decltype(impl_->cg)::element_type>();
    impl_->cg->setTolerance(iterative_tol);
    impl_->cg->setMaxIterations(static_cast<Index>(20 * std::sqrt(static_cast<double>(A.rows())) + 2000));
    impl_->cg->compute(impl_->owned);
    if (impl_->cg->info() != Eigen::Success) {
      throw Error(ErrorCode::DegeneratePotential, "incomplete Cholesky preconditioner failed");
    }
  }
}

SpdSolver::~SpdSolver() = default;
SpdSolver::SpdSolver(SpdSolver&&) noexcept = default;
SpdSolver& SpdSolver::operator=(SpdSolver&&) noexcept = default;

Eigen::VectorXd SpdSolver::solve(const Eigen::VectorXd& b, int refinement_steps) const {
  if (impl_->ldlt) {
    Eigen::VectorXd x = impl_->ldlt->solve(b);
    for (int s = 0; s < refinement_steps; ++s) {
      const Eigen::VectorXd r = b - (*impl_->A) * x;
      x += impl_->ldlt->solve(r);
    }
    impl_->iterations = 0;
    return x;
  }
  Eigen::VectorXd x = impl_->cg->solve(b);
  impl_->iterations = static_cast<int>(impl_->cg->iterations());
  if (impl_->cg->info() != Eigen::Success) {
    throw Error(ErrorCode::NoConvergence, "conjugate gradients hit the iteration cap");
  }
  return x;
}

bool SpdSolver::direct() const noexcept { return static_cast<bool>(impl_->ldlt); }
std::string SpdSolver::method() const { return direct() ? "direct-ldlt" : "pcg"; }
int SpdSolver::last_iterations() const noexcept { return impl_->iterations; }

Index inertia_below(const SparseMatrix& A, const Eigen::VectorXd& mass, double sigma) {
  SparseMatrix shifted = A;
  for (Index i = 0; i < A.rows(); ++i) shifted.coeffRef(i, i) -= sigma * mass[i];
  Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt(shifted);
  if (ldlt.info() != Eigen::Success) return -1;
  return static_cast<Index>((ldlt.vectorD().array() < 0.0).count());
}

}  // namespace effpot
