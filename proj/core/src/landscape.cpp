#include "effpot/landscape.hpp"

#include "effpot/errors.hpp"
#include "effpot/linalg.hpp"

namespace effpot {

double landscape_residual(const DiscreteOperator& op, const Eigen::VectorXd& u) {
  const Eigen::VectorXd& rhs = op.mass();
  return (op.stiffness() * u - rhs).norm() / rhs.norm();
}

Landscape solve_landscape(const DiscreteOperator& op, double tol) {
  if (!op.nondegenerate()) {
    throw Error(ErrorCode::DegeneratePotential, "V vanishes identically; K is singular");
  }
  SpdSolver solver(op.stiffness(), SpdSolver::kDefaultDirectMaxDof, tol * 1e-2);
  const Eigen::VectorXd& rhs = op.mass();

  Landscape out;
  out.tol = tol;
  out.solver = solver.method();
  out.u = solver.solve(rhs, 0);
  out.residual = landscape_residual(op, out.u);
  // Iterative refinement, a handful of rounds at most; keep the best iterate.
  for (int round = 0; round < 4 && out.residual > tol * 1e-2; ++round) {
    const Eigen::VectorXd r = rhs - op.stiffness() * out.u;
    Eigen::VectorXd candidate = out.u + solver.solve(r, 0);
    const double next = landscape_residual(op, candidate);
    if (!(next < out.residual)) break;
    out.u = std::move(candidate);
    out.residual = next;
  }
  out.iterations = solver.last_iterations();
  if (!(out.residual <= tol)) {
    throw Error(ErrorCode::NoConvergence,
                "landscape residual " + std::to_string(out.residual) + " above tolerance");
  }
  if ((out.u.array() <= 0.0).any()) {
    throw Error(ErrorCode::NonpositiveLandscape, "computed landscape has a nonpositive entry");
  }
  out.W = out.u.cwiseInverse();
  return out;
}

Eigen::VectorXd effective_potential(const Landscape& landscape) { return landscape.u.cwiseInverse(); }

}  // namespace effpot
