#pragma once

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "effpot/grid.hpp"

namespace effpot {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Per-node coefficients of L = -(1/m) div(m A grad) + V with A diagonal.
///
/// `a` holds one vector per axis; a single vector on a 2D grid means a scalar
/// (isotropic) coefficient. `v_bar` is the recorded supremum of V, which for a
/// generated potential is the distribution bound rather than the realized max.
struct CoefficientField {
  std::vector<double> V;
  std::vector<std::vector<double>> a;
  std::vector<double> m;
  double v_bar = 0.0;

  /// a along `axis` at node i, honoring the scalar shorthand.
  double a_at(Index i, int axis) const {
    const auto& col = a.size() == 1 ? a.front() : a[static_cast<std::size_t>(axis)];
    return col[static_cast<std::size_t>(i)];
  }
  bool nondegenerate() const noexcept;
  /// Smallest C with 1/C <= a, m <= C everywhere.
  double ellipticity_bound() const noexcept;
};

/// a = 1, m = 1 and the given potential; v_bar defaults to max V.
CoefficientField make_coefficients(const GridSpec& grid, std::vector<double> V,
                                   double v_bar = -1.0);
CoefficientField constant_coefficients(const GridSpec& grid, double v);

/// Checks lengths, positivity of a and m, 0 <= V <= v_bar.
void validate_coefficients(const GridSpec& grid, const CoefficientField& coeffs);

struct Edge {
  Index i;
  Index j;
  int axis;
  double c;
};

/// Symmetric stiffness K (Laplacian part plus V*M on the diagonal) and diagonal mass M.
///
/// A restricted operator lives on a subset of the grid nodes: K is the principal
/// submatrix, edges leaving the subset are folded into `boundary_coupling` (the
/// zero-extension/Dirichlet semantics) and `global_index` maps local dof to grid nodes.
class DiscreteOperator {
 public:
  const GridSpec& grid() const noexcept { return grid_; }
  const CoefficientField& coefficients() const noexcept { return *coeffs_; }
  std::shared_ptr<const CoefficientField> coefficients_ptr() const noexcept { return coeffs_; }

  Index dof() const noexcept { return static_cast<Index>(mass_.size()); }
  const SparseMatrix& stiffness() const noexcept { return K_; }
  const Eigen::VectorXd& mass() const noexcept { return mass_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Eigen::VectorXd& boundary_coupling() const noexcept { return boundary_; }
  /// V_i M_ii per local dof.
  const Eigen::VectorXd& potential_mass() const noexcept { return potential_mass_; }

  bool is_restricted() const noexcept { return restricted_; }
  const std::vector<Index>& global_index() const noexcept { return global_index_; }

  /// K positive definite: some potential mass or a Dirichlet coupling is present.
  bool nondegenerate() const noexcept;

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const { return K_ * x; }

  /// K without the potential term (restricted operators keep their boundary coupling).
  SparseMatrix laplacian() const;

  /// Local vector -> grid-sized vector, zero outside the subset.
  Eigen::VectorXd zero_extend(const Eigen::VectorXd& local) const;
  /// Grid-sized vector -> local values.
  Eigen::VectorXd gather(const Eigen::VectorXd& global) const;

 private:
  friend DiscreteOperator assemble(const GridSpec&, CoefficientField);
  friend DiscreteOperator assemble(const GridSpec&, std::shared_ptr<const CoefficientField>);
  friend DiscreteOperator restrict_to(const DiscreteOperator&, const IndexSet&);

  void build_matrix(const Eigen::VectorXd& diagonal);

  GridSpec grid_;
  std::shared_ptr<const CoefficientField> coeffs_;
  SparseMatrix K_;
  Eigen::VectorXd mass_;
  Eigen::VectorXd potential_mass_;
  Eigen::VectorXd boundary_;
  std::vector<Edge> edges_;
  std::vector<Index> global_index_;
  bool restricted_ = false;
};

/// Face coefficient c_ij = h^(dim-2) (m_i a_i + m_j a_j)/2 on every grid edge,
/// K_ii = sum_j c_ij + V_i M_ii, K_ij = -c_ij, M_ii = m_i h^dim.
DiscreteOperator assemble(const GridSpec& grid, CoefficientField coeffs);
DiscreteOperator assemble(const GridSpec& grid, std::shared_ptr<const CoefficientField> coeffs);

/// f^T K f evaluated edgewise: sum c (f_i - f_j)^2 + sum (V_i M_ii + coupling_i) f_i^2.
double quadratic_form(const DiscreteOperator& op, const Eigen::VectorXd& f);

/// Principal submatrix on `subset` (indices in the operator's own dof numbering).
DiscreteOperator restrict_to(const DiscreteOperator& op, const IndexSet& subset);

/// M-weighted inner product and squared norm.
double mass_inner(const Eigen::VectorXd& mass, const Eigen::VectorXd& x, const Eigen::VectorXd& y);
double mass_norm_sq(const Eigen::VectorXd& mass, const Eigen::VectorXd& x);

}  // namespace effpot
