#include "effpot/grid.hpp"

#include <algorithm>
#include <string>

#include "effpot/errors.hpp"

namespace effpot {

std::string_view topology_name(Topology t) noexcept {
  return t == Topology::Torus ? "torus" : "box";
}

Topology parse_topology(std::string_view name) {
  if (name == "torus") return Topology::Torus;
  if (name == "box") return Topology::Box;
  throw Error(ErrorCode::InvalidArgument, "unknown topology '" + std::string(name) + "'");
}

GridSpec build_grid(int dim, std::span<const int> extent_units, int cells_per_unit,
                    Topology topology) {
  if (dim != 1 && dim != 2) {
    throw Error(ErrorCode::InvalidDimension, "dim must be 1 or 2, got " + std::to_string(dim));
  }
  if (extent_units.size() != static_cast<std::size_t>(dim)) {
    throw Error(ErrorCode::LengthMismatch, "expected one extent per axis");
  }
  if (cells_per_unit < 1) {
    throw Error(ErrorCode::ZeroExtent, "cells_per_unit must be at least 1");
  }
  GridSpec g;
  g.dim_ = dim;
  g.cells_per_unit_ = cells_per_unit;
  g.topology_ = topology;
  g.node_count_ = 1;
  for (int k = 0; k < 2; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    if (k < dim) {
      if (extent_units[ku] < 1) {
        throw Error(ErrorCode::ZeroExtent, "extent along axis " + std::to_string(k) + " is < 1");
      }
      g.extents_[ku] = extent_units[ku];
      const Index cells = static_cast<Index>(extent_units[ku]) * cells_per_unit;
      g.axis_nodes_[ku] = topology == Topology::Torus ? cells : cells + 1;
    } else {
      g.extents_[ku] = 1;
      g.axis_nodes_[ku] = 1;
    }
    g.node_count_ *= g.axis_nodes_[ku];
  }
  return g;
}

double GridSpec::coordinate(Index i, int axis) const {
  return static_cast<double>(multi_index(i)[static_cast<std::size_t>(axis)]) * spacing();
}

Index GridSpec::unit_cell(Index i) const {
  const auto mi = multi_index(i);
  std::array<Index, 2> cell{0, 0};
  for (int k = 0; k < dim_; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    // The far face of a box belongs to the last cell.
    cell[ku] = std::min<Index>(mi[ku] / cells_per_unit_, extents_[ku] - 1);
  }
  return cell[0] + static_cast<Index>(extents_[0]) * cell[1];
}

Index GridSpec::unit_cell_count() const noexcept {
  Index n = 1;
  for (int k = 0; k < dim_; ++k) n *= extents_[static_cast<std::size_t>(k)];
  return n;
}

Index GridSpec::forward(Index i, int axis) const noexcept {
  const auto ku = static_cast<std::size_t>(axis);
  const Index n = axis_nodes_[ku];
  if (n < 2) return -1;
  auto mi = multi_index(i);
  if (mi[ku] + 1 < n) {
    ++mi[ku];
  } else if (topology_ == Topology::Torus) {
    mi[ku] = 0;
  } else {
    return -1;
  }
  return index_of(mi);
}

Index GridSpec::backward(Index i, int axis) const noexcept {
  const auto ku = static_cast<std::size_t>(axis);
  const Index n = axis_nodes_[ku];
  if (n < 2) return -1;
  auto mi = multi_index(i);
  if (mi[ku] > 0) {
    --mi[ku];
  } else if (topology_ == Topology::Torus) {
    mi[ku] = n - 1;
  } else {
    return -1;
  }
  return index_of(mi);
}

std::vector<Neighbor> adjacency(const GridSpec& grid, Index i) {
  if (i < 0 || i >= grid.node_count()) {
    throw Error(ErrorCode::IndexOutOfRange, "node " + std::to_string(i) + " outside grid");
  }
  std::vector<Neighbor> out;
  out.reserve(static_cast<std::size_t>(2 * grid.dim()));
  for (int k = 0; k < grid.dim(); ++k) {
    if (const Index j = grid.backward(i, k); j >= 0) out.push_back({j, k});
    if (const Index j = grid.forward(i, k); j >= 0) out.push_back({j, k});
  }
  return out;
}

IndexSet IndexSet::from_unsorted(std::vector<Index> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  return IndexSet(std::move(indices));
}

IndexSet IndexSet::from_sorted(std::vector<Index> indices) {
  for (std::size_t k = 1; k < indices.size(); ++k) {
    if (indices[k] <= indices[k - 1]) {
      throw Error(ErrorCode::InvalidArgument, "index set is not strictly increasing");
    }
  }
  return IndexSet(std::move(indices));
}

IndexSet IndexSet::all(Index node_count) {
  std::vector<Index> v(static_cast<std::size_t>(node_count));
  for (Index i = 0; i < node_count; ++i) v[static_cast<std::size_t>(i)] = i;
  return IndexSet(std::move(v));
}

bool IndexSet::contains(Index i) const noexcept {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

void IndexSet::check_range(Index node_count) const {
  if (!indices_.empty() && (indices_.front() < 0 || indices_.back() >= node_count)) {
    throw Error(ErrorCode::IndexOutOfRange, "index set exceeds node range");
  }
}

std::vector<char> IndexSet::mask(Index node_count) const {
  check_range(node_count);
  std::vector<char> m(static_cast<std::size_t>(node_count), 0);
  for (Index i : indices_) m[static_cast<std::size_t>(i)] = 1;
  return m;
}

IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  std::vector<Index> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return IndexSet::from_sorted(std::move(out));
}

IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
  std::vector<Index> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return IndexSet::from_sorted(std::move(out));
}

}  // namespace effpot
