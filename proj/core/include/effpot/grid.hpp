#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

namespace effpot {

using Index = std::ptrdiff_t;

enum class Topology { Torus, Box };

std::string_view topology_name(Topology t) noexcept;
Topology parse_topology(std::string_view name);

struct Neighbor {
  Index index;
  int axis;
  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Uniform Cartesian grid on the torus R^n / T Z^n or on the closed box [0,T_0]x[0,T_1].
///
/// Nodes are ordered row-major with axis 0 fastest. The torus carries T_k*p nodes
/// along axis k, the box T_k*p + 1 (both end points included).
class GridSpec {
 public:
  GridSpec() = default;

  int dim() const noexcept { return dim_; }
  int extent_units(int axis) const { return extents_[static_cast<std::size_t>(axis)]; }
  int cells_per_unit() const noexcept { return cells_per_unit_; }
  Topology topology() const noexcept { return topology_; }
  double spacing() const noexcept { return 1.0 / cells_per_unit_; }

  Index axis_nodes(int axis) const { return axis_nodes_[static_cast<std::size_t>(axis)]; }
  Index node_count() const noexcept { return node_count_; }

  /// Node index for per-axis coordinates (unused axes must be 0).
  Index index_of(std::array<Index, 2> multi) const noexcept {
    return multi[0] + axis_nodes_[0] * multi[1];
  }
  std::array<Index, 2> multi_index(Index i) const noexcept {
    return {i % axis_nodes_[0], i / axis_nodes_[0]};
  }
  double coordinate(Index i, int axis) const;

  /// Index of the unit potential cell containing node i (row-major over cells).
  Index unit_cell(Index i) const;
  Index unit_cell_count() const noexcept;

  /// Neighbor one step forward along `axis`, or -1 when the box boundary truncates
  /// the stencil or the axis has a single node.
  Index forward(Index i, int axis) const noexcept;
  Index backward(Index i, int axis) const noexcept;

  /// Visits every undirected edge exactly once as (i, j, axis) with j = forward(i, axis).
  /// On a torus axis with two nodes both periodic edges between the pair are visited.
  template <typename Fn>
  void for_each_edge(Fn&& fn) const {
    for (Index i = 0; i < node_count_; ++i) {
      for (int k = 0; k < dim_; ++k) {
        const Index j = forward(i, k);
        if (j >= 0) fn(i, j, k);
      }
    }
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  friend GridSpec build_grid(int, std::span<const int>, int, Topology);

  int dim_ = 1;
  std::array<int, 2> extents_{1, 1};
  int cells_per_unit_ = 1;
  Topology topology_ = Topology::Torus;
  std::array<Index, 2> axis_nodes_{1, 1};
  Index node_count_ = 1;
};

GridSpec build_grid(int dim, std::span<const int> extent_units, int cells_per_unit,
                    Topology topology);

inline GridSpec build_grid(int dim, std::initializer_list<int> extent_units, int cells_per_unit,
                           Topology topology) {
  return build_grid(dim, std::span<const int>(extent_units.begin(), extent_units.size()),
                    cells_per_unit, topology);
}

/// All neighbors of node i; each undirected edge appears from both endpoints.
std::vector<Neighbor> adjacency(const GridSpec& grid, Index i);

/// Sorted set of unique node indices.
class IndexSet {
 public:
  IndexSet() = default;

  static IndexSet from_unsorted(std::vector<Index> indices);
  /// Throws InvalidArgument unless `indices` is strictly increasing.
  static IndexSet from_sorted(std::vector<Index> indices);
  static IndexSet all(Index node_count);

  bool empty() const noexcept { return indices_.empty(); }
  std::size_t size() const noexcept { return indices_.size(); }
  Index operator[](std::size_t k) const { return indices_[k]; }
  auto begin() const noexcept { return indices_.begin(); }
  auto end() const noexcept { return indices_.end(); }
  std::span<const Index> view() const noexcept { return indices_; }
  const std::vector<Index>& indices() const noexcept { return indices_; }

  bool contains(Index i) const noexcept;
  /// Throws IndexOutOfRange if any index falls outside [0, node_count).
  void check_range(Index node_count) const;

  /// Dense membership mask of length node_count.
  std::vector<char> mask(Index node_count) const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  explicit IndexSet(std::vector<Index> sorted) : indices_(std::move(sorted)) {}
  std::vector<Index> indices_;
};

IndexSet set_union(const IndexSet& a, const IndexSet& b);
IndexSet set_difference(const IndexSet& a, const IndexSet& b);

}  // namespace effpot
