#pragma once

#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "effpot/grid.hpp"
#include "effpot/landscape.hpp"
#include "effpot/operator.hpp"

namespace effpot {

enum class Stencil {
  Axis,      ///< 2*dim axis neighbors
  Diagonal,  ///< axis neighbors plus the four diagonal neighbors (2D only)
};

std::string_view stencil_name(Stencil s) noexcept;
Stencil parse_stencil(std::string_view name);

/// w_i = max(1/u_i - mu, 0), plus the coefficient field that supplies the B = A^-1 metric.
struct AgmonWeight {
  double mu = 0.0;
  Eigen::VectorXd w;
  /// a-field for the metric; null means A = identity.
  std::shared_ptr<const CoefficientField> coeffs;
};

AgmonWeight agmon_weight(const Landscape& landscape, double mu,
                         std::shared_ptr<const CoefficientField> coeffs = nullptr);
AgmonWeight agmon_weight(const Eigen::VectorXd& W, double mu,
                         std::shared_ptr<const CoefficientField> coeffs = nullptr);

/// Compressed adjacency with the discrete path-length cost of every grid edge.
///
/// Along axis k between neighbors i, j:
///   cost = len * sqrt(b_k) * (sqrt(w_i) + sqrt(w_j)) / 2,  b_k = (1/a_i^k + 1/a_j^k)/2,
/// with len = h for axis edges and h*sqrt(2) (and b averaged over both axes) for diagonals.
class AgmonGraph {
 public:
  AgmonGraph(const GridSpec& grid, const AgmonWeight& weight, Stencil stencil = Stencil::Axis);

  Index node_count() const noexcept { return static_cast<Index>(offsets_.size()) - 1; }
  Stencil stencil() const noexcept { return stencil_; }
  double mu() const noexcept { return mu_; }

  struct Arc {
    Index to;
    double cost;
  };
  std::span<const Arc> arcs(Index i) const {
    const auto b = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(i)]);
    const auto e = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(i) + 1]);
    return {arcs_.data() + b, e - b};
  }

 private:
  std::vector<Index> offsets_;
  std::vector<Arc> arcs_;
  Stencil stencil_;
  double mu_;
};

/// Agmon distance from every node to a source set.
struct DistanceField {
  Eigen::VectorXd h;
  IndexSet sources;
  Stencil stencil = Stencil::Axis;
  double mu = 0.0;
  std::string source_label;
};

/// Multi-source label-setting shortest paths; ties are settled in ascending node order.
DistanceField distance_to_set(const AgmonGraph& graph, const IndexSet& sources,
                              std::string source_label = {});
DistanceField distance_to_set(const GridSpec& grid, const AgmonWeight& weight,
                              const IndexSet& sources, Stencil stencil = Stencil::Axis);

/// Symmetric matrix of min Agmon distances between disjoint node sets; zero diagonal.
Eigen::MatrixXd pairwise_separation(const AgmonGraph& graph, const std::vector<IndexSet>& sets);
Eigen::MatrixXd pairwise_separation(const GridSpec& grid, const AgmonWeight& weight,
                                    const std::vector<IndexSet>& sets,
                                    Stencil stencil = Stencil::Axis);

/// Distance to the nearest of several disjoint sets and the index of that set; equal
/// distances go to the lower set index.
struct NearestSet {
  Eigen::VectorXd h;
  std::vector<int> label;
};
NearestSet nearest_set(const AgmonGraph& graph, const std::vector<IndexSet>& sets);

/// min over x in `targets` of field.h(x); +inf for an empty target set.
double min_over(const DistanceField& field, const IndexSet& targets);

/// max over arcs (i, j) of h_j - (h_i + cost), evaluated in floating point; <= 0 exactly for
/// shortest-path output.
double max_lipschitz_excess(const AgmonGraph& graph, const Eigen::VectorXd& h);

}  // namespace effpot
