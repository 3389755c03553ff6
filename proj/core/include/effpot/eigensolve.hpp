#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "effpot/grid.hpp"
#include "effpot/operator.hpp"
#include "effpot/wells.hpp"

namespace effpot {

enum class EigenMethod { Auto, Krylov, Dense };

struct EigenOptions {
  /// Residual target ||K x - lambda M x||_2 / ||M x||_2 <= tol * max(1, |lambda|).
  double tol = 1e-10;
  /// Seed of the starting block; recorded in the result.
  std::uint64_t seed = 0x5eed5eedULL;
  int block_size = 4;
  EigenMethod method = EigenMethod::Auto;
  /// Largest problem handed to the dense solver (also the Krylov fallback bound).
  Index dense_max_dof = 3000;
  /// Krylov basis cap before an explicit restart; 0 picks a size from k.
  int max_basis = 0;
  int max_restarts = 80;
  /// Spectral shift of the inverted operator (K - shift*M)^-1; must lie below lambda_1.
  double shift = 0.0;
  /// Confirm via Sylvester inertia that no eigenvalue below the k-th was skipped.
  bool verify_inertia = true;
};

/// Ascending eigenpairs of K x = lambda M x with M-orthonormal vectors.
struct EigenSet {
  std::vector<double> values;
  /// dof x count, in the operator's own (possibly restricted) numbering.
  Eigen::MatrixXd vectors;
  std::vector<double> residuals;
  /// Group id for members of numerically degenerate groups, -1 otherwise.
  std::vector<int> degenerate_group;
  std::string domain = "global";
  std::string method;
  std::uint64_t seed = 0;
  /// Every eigenvalue strictly below this bound is present in `values`.
  double complete_below = -std::numeric_limits<double>::infinity();

  std::size_t size() const noexcept { return values.size(); }
};

/// The k smallest eigenpairs. Throws KExceedsDof, DegeneratePotential, NoConvergence.
EigenSet eig_smallest(const DiscreteOperator& op, int k, const EigenOptions& options = {});

/// All eigenpairs with value <= threshold, and at least the first `min_count`.
EigenSet eig_below(const DiscreteOperator& op, double threshold, int min_count,
                   const EigenOptions& options = {});

struct LocalizedPair {
  int cluster;
  int j;
  double value;
};

/// Eigenpairs of the operator restricted to each Omega_l (Dirichlet on the removed set).
struct LocalizedEigenSet {
  std::vector<EigenSet> wells;
  std::vector<IndexSet> omegas;
  /// All kept pairs, ascending by value.
  std::vector<LocalizedPair> flat;
  /// Full-grid mass diagonal.
  Eigen::VectorXd mass;
  Index node_count = 0;

  Eigen::VectorXd zero_extended(std::size_t flat_index) const;
  std::vector<double> values() const;
  /// min over wells of EigenSet::complete_below.
  double complete_below() const;
};

/// For every cluster keep pairs with value <= mu_bar, and at least k_per_well pairs.
LocalizedEigenSet eig_localized(const DiscreteOperator& op, const WellPartition& partition,
                                int k_per_well, double mu_bar, const EigenOptions& options = {});

/// N(lambda) = #{values <= lambda}.
class CountingFunction {
 public:
  CountingFunction() = default;
  explicit CountingFunction(std::vector<double> values);
  std::size_t operator()(double lambda) const;
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
};

CountingFunction counting(std::vector<double> values);

struct Projection {
  Eigen::VectorXd projection;
  /// ||v - projection||_M^2
  double residual_norm_sq = 0.0;
  std::size_t rank = 0;
};

/// M-orthogonal projection of v onto localized eigenvectors with value in the open window (a, b).
Projection spectral_project(const Eigen::VectorXd& v, const LocalizedEigenSet& basis, double a,
                            double b);
/// Same for a global eigenbasis (vectors on the full grid).
Projection spectral_project(const Eigen::VectorXd& v, const EigenSet& basis,
                            const Eigen::VectorXd& mass, double a, double b);

/// Dense symmetric eigensolve of (K, M); every eigenpair, ascending.
EigenSet dense_eigensolve(const DiscreteOperator& op);

/// ||K x - lambda M x||_2 / ||M x||_2.
double eigen_residual(const DiscreteOperator& op, double lambda, const Eigen::VectorXd& x);

}  // namespace effpot
