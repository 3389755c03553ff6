#include "effpot/demo2d.hpp"

#include <algorithm>

#include "effpot/agmon.hpp"
#include "effpot/errors.hpp"

namespace effpot {

double mean_level_spacing(const std::vector<double>& values, int target, int halfwidth) {
  const int n = static_cast<int>(values.size());
  if (n < 2) throw Error(ErrorCode::InsufficientData, "level spacing needs two eigenvalues");
  const int lo = std::max(1, target - halfwidth);
  const int hi = std::min(n, target + halfwidth);
  if (hi <= lo) throw Error(ErrorCode::InsufficientData, "spacing window holds one eigenvalue");
  return (values[static_cast<std::size_t>(hi - 1)] - values[static_cast<std::size_t>(lo - 1)]) /
         (hi - lo);
}

Demo2DResult run_demo2d(const Demo2DConfig& config) {
  if (config.target < 1 || config.target > config.eigen_count) {
    throw Error(ErrorCode::InvalidArgument, "target index outside the computed eigenvalues");
  }
  Demo2DResult res;
  for (int attempt = 0;; ++attempt) {
    const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(attempt);
    try {
      res.instance = gen_bernoulli_2d(seed, config.T, config.v_high, config.prob, config.p);
      res.seed_used = seed;
      break;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::AllZeroRealization || attempt + 1 >= config.max_seed_retries) throw;
      res.skipped_seeds.push_back(seed);
    }
  }
  const GridSpec& grid = res.instance.grid;
  const DiscreteOperator op = assemble(grid, res.instance.coeffs);
  res.landscape = solve_landscape(op);
  res.eigen = eig_smallest(op, config.eigen_count, config.eigen);
  res.delta = config.delta > 0.0
                  ? config.delta
                  : mean_level_spacing(res.eigen.values, config.target, config.spacing_halfwidth);
  res.mu_bar = res.eigen.values[static_cast<std::size_t>(config.target - 1)];
  res.partition = build_partition(grid, res.landscape, res.instance.coeffs, res.mu_bar, res.delta);

  const Eigen::VectorXd& M = op.mass();
  for (int j = 0; j < config.eigen_count; ++j) {
    EigenvectorMass em;
    em.index = j + 1;
    em.lambda = res.eigen.values[static_cast<std::size_t>(j)];
    const auto psi = res.eigen.vectors.col(j);
    const double total = mass_norm_sq(M, psi);
    const IndexSet E = sublevel_set(res.landscape, em.lambda + res.delta);
    const std::vector<IndexSet> comps = components(grid, E);
    em.cluster_count = comps.size();
    double in_set = 0.0;
    for (std::size_t c = 0; c < comps.size(); ++c) {
      double mass = 0.0;
      for (Index i : comps[c]) mass += psi[i] * psi[i] * M[i];
      in_set += mass;
      if (mass / total > em.best_fraction) {
        em.best_fraction = mass / total;
        em.best_cluster = static_cast<int>(c);
      }
    }
    em.set_fraction = in_set / total;
    if (!comps.empty()) {
      const AgmonGraph graph(grid, agmon_weight(res.landscape, em.lambda, res.instance.coeffs));
      const NearestSet basins = nearest_set(graph, comps);
      std::vector<double> basin_mass(comps.size(), 0.0);
      for (Index i = 0; i < grid.node_count(); ++i) {
        const int b = basins.label[static_cast<std::size_t>(i)];
        if (b >= 0) basin_mass[static_cast<std::size_t>(b)] += psi[i] * psi[i] * M[i];
      }
      const auto it = std::max_element(basin_mass.begin(), basin_mass.end());
      em.basin_cluster = static_cast<int>(it - basin_mass.begin());
      em.basin_fraction = *it / total;
    }
    em.localized = em.best_fraction >= config.mass_threshold;
    if (em.localized) ++res.localized_count;
    res.masses.push_back(em);
  }
  return res;
}

}  // namespace effpot
