#include "support.hpp"

#include <cmath>
#include <deque>
#include <limits>

namespace effpot::testing {

namespace {

double between(Rng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

// Forward neighbor along an axis from raw coordinates, independent of GridSpec::forward.
Index step(const GridSpec& g, Index i, int axis) {
  const Index n0 = g.axis_nodes(0);
  Index x = i % n0;
  Index y = i / n0;
  Index& c = axis == 0 ? x : y;
  const Index n = g.axis_nodes(axis);
  if (n == 1) return -1;
  if (c + 1 < n) {
    ++c;
  } else if (g.topology() == Topology::Torus) {
    c = 0;
  } else {
    return -1;
  }
  return x + n0 * y;
}

}  // namespace

CoefficientField random_field(const GridSpec& grid, Rng& rng, double v_bar, bool anisotropic) {
  const auto n = static_cast<std::size_t>(grid.node_count());
  CoefficientField c;
  c.V.resize(n);
  c.m.resize(n);
  for (auto& v : c.V) v = between(rng, 0.0, v_bar);
  for (auto& v : c.m) v = between(rng, 0.5, 2.0);
  const int axes = anisotropic && grid.dim() == 2 ? 2 : 1;
  c.a.assign(static_cast<std::size_t>(axes), std::vector<double>(n));
  for (auto& col : c.a) {
    for (auto& v : col) v = between(rng, 0.5, 2.0);
  }
  c.v_bar = v_bar;
  return c;
}

GridSpec random_grid(Rng& rng, Index max_nodes, bool allow_2d) {
  const Topology topo = rng.bernoulli(0.5) ? Topology::Torus : Topology::Box;
  const int p = 1 + static_cast<int>(rng.next() % 4);
  if (!allow_2d || rng.bernoulli(0.5)) {
    const int cap = static_cast<int>((max_nodes - 1) / p);
    const int T = 1 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(std::max(cap, 1)));
    return build_grid(1, {std::max(T, topo == Topology::Torus ? 2 : 1)}, p, topo);
  }
  const int side = static_cast<int>(std::sqrt(static_cast<double>(max_nodes))) / p - 1;
  const int T0 = 1 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(std::max(side, 1)));
  const int T1 = 1 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(std::max(side, 1)));
  return build_grid(2, {T0, T1}, p, topo);
}

Eigen::MatrixXd dense_stiffness(const GridSpec& grid, const CoefficientField& c) {
  const Index n = grid.node_count();
  const double h = 1.0 / grid.cells_per_unit();
  const double scale = std::pow(h, grid.dim() - 2);
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    K(i, i) += c.V[ui] * c.m[ui] * std::pow(h, grid.dim());
    for (int axis = 0; axis < grid.dim(); ++axis) {
      const Index j = step(grid, i, axis);
      if (j < 0) continue;
      const auto uj = static_cast<std::size_t>(j);
      const auto& a = c.a.size() == 1 ? c.a[0] : c.a[static_cast<std::size_t>(axis)];
      const double cij = scale * (c.m[ui] * a[ui] + c.m[uj] * a[uj]) / 2.0;
      // f^T K f gains cij (f_i - f_j)^2
      K(i, i) += cij;
      K(j, j) += cij;
      K(i, j) -= cij;
      K(j, i) -= cij;
    }
  }
  return K;
}

Eigen::VectorXd dense_mass(const GridSpec& grid, const CoefficientField& c) {
  Eigen::VectorXd M(grid.node_count());
  const double hd = std::pow(1.0 / grid.cells_per_unit(), grid.dim());
  for (Index i = 0; i < M.size(); ++i) M[i] = c.m[static_cast<std::size_t>(i)] * hd;
  return M;
}

Eigen::VectorXd dense_eigenvalues(const Eigen::MatrixXd& K, const Eigen::VectorXd& mass) {
  const Eigen::VectorXd d = mass.cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd S = d.asDiagonal() * K * d.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

Eigen::MatrixXd floyd_warshall(const AgmonGraph& graph) {
  const Index n = graph.node_count();
  const double inf = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd D = Eigen::MatrixXd::Constant(n, n, inf);
  for (Index i = 0; i < n; ++i) {
    D(i, i) = 0.0;
    for (const auto& arc : graph.arcs(i)) D(i, arc.to) = std::min(D(i, arc.to), arc.cost);
  }
  for (Index k = 0; k < n; ++k) {
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        D(i, j) = std::min(D(i, j), D(i, k) + D(k, j));
      }
    }
  }
  return D;
}

std::vector<int> bfs_labels(const GridSpec& grid, const std::vector<char>& mask) {
  const Index n = grid.node_count();
  std::vector<std::vector<Index>> nbr(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    for (int axis = 0; axis < grid.dim(); ++axis) {
      const Index j = step(grid, i, axis);
      if (j < 0) continue;
      nbr[static_cast<std::size_t>(i)].push_back(j);
      nbr[static_cast<std::size_t>(j)].push_back(i);
    }
  }
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (Index s = 0; s < n; ++s) {
    if (!mask[static_cast<std::size_t>(s)] || label[static_cast<std::size_t>(s)] >= 0) continue;
    std::deque<Index> queue{s};
    label[static_cast<std::size_t>(s)] = next;
    while (!queue.empty()) {
      const Index i = queue.front();
      queue.pop_front();
      for (Index j : nbr[static_cast<std::size_t>(i)]) {
        if (!mask[static_cast<std::size_t>(j)] || label[static_cast<std::size_t>(j)] >= 0) continue;
        label[static_cast<std::size_t>(j)] = next;
        queue.push_back(j);
      }
    }
    ++next;
  }
  return label;
}

Eigen::VectorXd random_vector(Rng& rng, Index n) {
  Eigen::VectorXd v(n);
  for (Index i = 0; i < n; ++i) v[i] = 2.0 * rng.uniform() - 1.0;
  return v;
}

}  // namespace effpot::testing

namespace effpot::testing {

TwoWell well_potential(int T, int p, const std::vector<int>& wells, double v_low, double v_high) {
  TwoWell out;
  out.grid = build_grid(1, {T}, p, Topology::Torus);
  std::vector<double> V(static_cast<std::size_t>(out.grid.node_count()), v_high);
  for (Index i = 0; i < out.grid.node_count(); ++i) {
    const int cell = static_cast<int>(out.grid.unit_cell(i));
    for (int w : wells) {
      if (cell == w) V[static_cast<std::size_t>(i)] = v_low;
    }
  }
  out.coeffs = std::make_shared<CoefficientField>(make_coefficients(out.grid, V, v_high));
  return out;
}

}  // namespace effpot::testing
