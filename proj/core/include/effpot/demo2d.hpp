#pragma once

#include <cstdint>
#include <vector>

#include "effpot/eigensolve.hpp"
#include "effpot/ensemble.hpp"
#include "effpot/landscape.hpp"
#include "effpot/wells.hpp"

namespace effpot {

struct Demo2DConfig {
  std::uint64_t seed = 1;
  int T = 80;
  int p = 4;
  double prob = 0.3;
  double v_high = 4.0;
  int eigen_count = 20;
  /// 1-based index of the eigenvalue whose sublevel set is partitioned.
  int target = 5;
  /// <= 0 selects the mean level spacing of the eigenvalues within `spacing_halfwidth`
  /// indices of the target.
  double delta = 0.0;
  int spacing_halfwidth = 4;
  double mass_threshold = 0.9;
  /// Attempts with seed, seed+1, ... when a draw has V = 0 everywhere.
  int max_seed_retries = 16;
  EigenOptions eigen;
};

struct EigenvectorMass {
  int index = 0;  ///< 1-based
  double lambda = 0.0;
  std::size_t cluster_count = 0;
  int best_cluster = -1;
  /// Largest share of ||psi||_M^2 inside one component of E(lambda + delta).
  double best_fraction = 0.0;
  /// Share of ||psi||_M^2 inside E(lambda + delta) as a whole.
  double set_fraction = 0.0;
  /// Largest share inside one Agmon basin (nodes nearest to a component under w_lambda).
  double basin_fraction = 0.0;
  int basin_cluster = -1;
  bool localized = false;
};

struct Demo2DResult {
  std::uint64_t seed_used = 0;
  std::vector<std::uint64_t> skipped_seeds;
  Instance instance;
  Landscape landscape;
  EigenSet eigen;
  double delta = 0.0;
  double mu_bar = 0.0;
  WellPartition partition;
  std::vector<EigenvectorMass> masses;
  int localized_count = 0;
};

/// Bernoulli landscape, lowest eigenpairs, partition of E(lambda_target + delta) and the
/// per-eigenvector mass concentration table.
Demo2DResult run_demo2d(const Demo2DConfig& config);

/// Mean spacing (lambda_hi - lambda_lo)/(hi - lo) over indices target +- halfwidth (1-based,
/// clipped to the available values).
double mean_level_spacing(const std::vector<double>& values, int target, int halfwidth);

}  // namespace effpot
