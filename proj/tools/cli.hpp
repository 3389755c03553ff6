#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "effpot/agmon.hpp"
#include "effpot/demo2d.hpp"
#include "effpot/eigensolve.hpp"
#include "effpot/ensemble.hpp"
#include "effpot/grid.hpp"

namespace effpot::cli {

struct GridConfig {
  int dim = 1;
  std::vector<int> extent{64};
  int cells_per_unit = 4;
  Topology topology = Topology::Torus;
};

struct CoefficientConfig {
  /// "generator", "file" or "constant"
  std::string source = "generator";
  /// "uniform_1d" or "bernoulli_2d"
  std::string generator = "uniform_1d";
  std::uint64_t seed = 1;
  int T = 256;
  int p = 4;
  double V_bar = 4.0;
  double v_high = 4.0;
  double prob = 0.3;
  double value = 1.0;
  std::string path;
};

/// mu_bar = value, or lambda_k + multiple * delta.
struct LevelSpec {
  bool from_eigen = true;
  double value = 0.0;
  int eigen_index = 1;
  double delta_multiple = 0.0;
};

struct DeltaSpec {
  enum class Kind { Number, InverseT, MeanSpacing } kind = Kind::InverseT;
  double value = 0.0;
};

struct RunConfig {
  /// Verbatim configuration text, echoed into JSON outputs.
  std::string raw = "{}";
  std::optional<GridConfig> grid;
  CoefficientConfig coefficients;
  double landscape_tol = 1e-12;
  EigenOptions eigen;
  LevelSpec mu_bar;
  DeltaSpec delta;
  double alpha = 0.5;
  double merge_threshold = 0.0;
  Stencil stencil = Stencil::Axis;
  int eig_count = 10;
  int k_per_well = 1;
  bool localized = false;
  bool write_vectors = false;
  int identity_tests = 5;
  EnsembleConfig ensemble;
  RealizationConfig realization;
  Demo2DConfig demo;
  std::filesystem::path out = "out";
};

/// Throws Error(ConfigParse) on malformed JSON, unknown keys or bad values.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// --seed-base: replaces every seed in the configuration.
void apply_seed_base(RunConfig& config, std::uint64_t base);

const std::vector<std::string>& subcommands();

/// Runs one subcommand; returns the process exit status (0 ok, 1 computational error
/// with error.json written to the output directory, 2 configuration error).
int run_subcommand(const std::string& name, const RunConfig& config, std::ostream& log);

}  // namespace effpot::cli
