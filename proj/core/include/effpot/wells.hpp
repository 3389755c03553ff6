#pragma once

#include <limits>
#include <vector>

#include <Eigen/Core>

#include "effpot/agmon.hpp"
#include "effpot/grid.hpp"
#include "effpot/landscape.hpp"

namespace effpot {

/// {i : W_i <= nu}. An empty result is legal.
IndexSet sublevel_set(const Eigen::VectorXd& W, double nu);
IndexSet sublevel_set(const Landscape& landscape, double nu);

/// Grid-connected components of `set` (union-find), ordered by smallest member.
std::vector<IndexSet> components(const GridSpec& grid, const IndexSet& set);

struct PartitionOptions {
  /// Components closer than this (transitively) are merged into one cluster; components at
  /// zero distance are always merged.
  double merge_threshold = 0.0;
  Stencil stencil = Stencil::Axis;
};

/// Decomposition of E(mu_bar + delta) into separated wells and their subregions Omega_l.
struct WellPartition {
  double mu_bar = 0.0;
  double delta = 0.0;
  double nu = 0.0;
  double merge_threshold = 0.0;
  Stencil stencil = Stencil::Axis;

  IndexSet E;
  std::vector<IndexSet> components;
  std::vector<IndexSet> clusters;
  /// cluster id of every component
  std::vector<int> component_cluster;
  Eigen::MatrixXd component_separation;
  Eigen::MatrixXd separation;
  /// min off-diagonal cluster separation; +inf with a single cluster
  double S_bar = std::numeric_limits<double>::infinity();
  bool single_cluster = false;
  std::vector<IndexSet> omegas;

  /// Per node: nearest cluster under rho_{mu_bar} and the distance to it.
  std::vector<int> nearest_cluster;
  Eigen::VectorXd rho_nearest;
  /// Per node: owning Omega (cluster id) or -1.
  std::vector<int> omega_owner;
};

/// Requires mu_bar >= 0, delta > 0, mu_bar + delta <= v_bar. Throws EmptyWellSet when
/// E(mu_bar + delta) is empty.
WellPartition build_partition(const GridSpec& grid, const Landscape& landscape,
                              std::shared_ptr<const CoefficientField> coeffs, double mu_bar,
                              double delta, const PartitionOptions& options = {});

/// rho_{mu_bar}(., E_l) for one cluster of a partition.
DistanceField cluster_distance(const GridSpec& grid, const Landscape& landscape,
                               std::shared_ptr<const CoefficientField> coeffs,
                               const WellPartition& partition, std::size_t cluster);

/// Throws InvalidArgument describing the first violated partition invariant.
void check_partition_invariants(const GridSpec& grid, const Landscape& landscape,
                                std::shared_ptr<const CoefficientField> coeffs,
                                const WellPartition& partition);

}  // namespace effpot
