#pragma once

#include <string>

#include <Eigen/Core>

#include "effpot/operator.hpp"

namespace effpot {

/// Solution of K u = M 1 and its reciprocal, the effective potential W = 1/u.
struct Landscape {
  Eigen::VectorXd u;
  Eigen::VectorXd W;
  /// ||K u - M 1||_2 / ||M 1||_2
  double residual = 0.0;
  double tol = 0.0;
  std::string solver;
  int iterations = 0;
};

constexpr double kDefaultLandscapeTol = 1e-12;

/// Throws DegeneratePotential (K singular), NoConvergence, NonpositiveLandscape.
Landscape solve_landscape(const DiscreteOperator& op, double tol = kDefaultLandscapeTol);

/// W_i = 1/u_i.
Eigen::VectorXd effective_potential(const Landscape& landscape);

/// ||K u - M 1||_2 / ||M 1||_2 for an arbitrary candidate u.
double landscape_residual(const DiscreteOperator& op, const Eigen::VectorXd& u);

}  // namespace effpot
