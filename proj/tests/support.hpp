#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "effpot/agmon.hpp"
#include "effpot/grid.hpp"
#include "effpot/operator.hpp"
#include "effpot/prng.hpp"

namespace effpot::testing {

/// Random V in [0, v_bar), a and m in [1/2, 2]. Per-axis a on 2D grids when `anisotropic`.
CoefficientField random_field(const GridSpec& grid, Rng& rng, double v_bar, bool anisotropic);

/// Random 1D or 2D grid with at most `max_nodes` nodes.
GridSpec random_grid(Rng& rng, Index max_nodes, bool allow_2d = true);

/// K assembled straight from the bilinear form on (x, y) node coordinates.
Eigen::MatrixXd dense_stiffness(const GridSpec& grid, const CoefficientField& c);
Eigen::VectorXd dense_mass(const GridSpec& grid, const CoefficientField& c);

/// All generalized eigenvalues of (K, M) through the symmetric form D^-1 K D^-1.
Eigen::VectorXd dense_eigenvalues(const Eigen::MatrixXd& K, const Eigen::VectorXd& mass);

/// All-pairs shortest paths over the arcs of an Agmon graph.
Eigen::MatrixXd floyd_warshall(const AgmonGraph& graph);

/// Breadth-first component labels of a node mask (-1 outside), numbered by smallest member.
std::vector<int> bfs_labels(const GridSpec& grid, const std::vector<char>& mask);

Eigen::VectorXd random_vector(Rng& rng, Index n);

}  // namespace effpot::testing

namespace effpot::testing {

/// 1D torus with V = v_high except V = v_low on the unit cells listed in `wells`.
struct TwoWell {
  GridSpec grid;
  std::shared_ptr<CoefficientField> coeffs;
};
TwoWell well_potential(int T, int p, const std::vector<int>& wells, double v_low = 0.0,
                       double v_high = 4.0);

}  // namespace effpot::testing
