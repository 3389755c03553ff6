#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "effpot/eigensolve.hpp"
#include "effpot/grid.hpp"
#include "effpot/operator.hpp"

namespace effpot {

struct Instance {
  GridSpec grid;
  std::shared_ptr<const CoefficientField> coeffs;
};

/// 1D torus of T unit cells, V ~ Uniform[0, V_bar) constant on each cell, a = m = 1.
Instance gen_uniform_1d(std::uint64_t seed, int T, double V_bar, int p);

/// 2D torus of T x T unit squares, V = v_high with probability prob else 0.
/// Throws AllZeroRealization when no square is raised.
Instance gen_bernoulli_2d(std::uint64_t seed, int T, double v_high, double prob, int p);

struct RealizationConfig {
  std::uint64_t seed = 1;
  int T = 256;
  double V_bar = 4.0;
  int p = 4;
  /// <= 0 selects 1/T.
  double delta = 0.0;
  EigenOptions eigen;
  /// Record wall time; off by default so repeated runs produce identical files.
  bool timing = false;
};

struct RealizationRecord {
  std::uint64_t seed = 0;
  int T = 0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double gap = 0.0;
  double delta = 0.0;
  std::size_t component_count = 0;
  /// +inf when E has a single component (no separation defined).
  double S_min = 0.0;
  double S_median = 0.0;
  double runtime_ms = 0.0;
  /// Empty on success, else the error tag of the failure.
  std::string error_tag;

  bool ok() const noexcept { return error_tag.empty(); }
  bool single_component() const noexcept { return ok() && component_count == 1; }
};

/// assemble -> landscape -> two lowest eigenpairs -> components of E(lambda1 + delta) ->
/// Agmon separations (weight w_{lambda1}) between circularly consecutive components.
/// Module errors are caught and recorded in `error_tag`.
RealizationRecord run_realization(const RealizationConfig& config);

struct EnsembleConfig {
  std::vector<int> Ts{128, 256, 512, 1024, 2048};
  int realizations = 200;
  std::uint64_t base_seed = 1;
  double V_bar = 4.0;
  int p = 4;
  /// <= 0 selects 1/T.
  double delta = 0.0;
  /// 0 uses the available hardware parallelism.
  int threads = 0;
  bool timing = false;
  EigenOptions eigen;
};

struct PerTSummary {
  int T = 0;
  std::size_t count = 0;
  std::size_t failures = 0;
  std::size_t single_component = 0;
  /// Lower median of S_min over successful realizations (+inf counts as largest).
  double median_S = 0.0;
  double gap_fraction = 0.0;
};

struct EnsembleSummary {
  /// Sorted by (T, seed).
  std::vector<RealizationRecord> records;
  std::vector<PerTSummary> per_T;
  bool fit_available = false;
  double prefactor = 0.0;
  double exponent = 0.0;
  /// Informational: per-T medians never decrease with T.
  bool medians_nondecreasing = false;
};

/// Sort, reduce per T and fit log(median S) = log(prefactor) + exponent log(T).
/// Throws InsufficientData when `fit` is requested with fewer than 3 finite medians.
EnsembleSummary aggregate(std::vector<RealizationRecord> records, bool fit = true);

/// Realization r of every T uses seed base_seed + r. Output order is independent of threads.
std::vector<RealizationRecord> run_ensemble(const EnsembleConfig& config);

/// Lower median; +inf entries sort last. Requires a nonempty input.
double lower_median(std::vector<double> values);

}  // namespace effpot
