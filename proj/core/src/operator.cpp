#include "effpot/operator.hpp"

#include <algorithm>
#include <cmath>

#include "effpot/errors.hpp"

namespace effpot {

bool CoefficientField::nondegenerate() const noexcept {
  return std::any_of(V.begin(), V.end(), [](double v) { return v > 0.0; });
}

double CoefficientField::ellipticity_bound() const noexcept {
  double c = 1.0;
  auto widen = [&c](double x) { c = std::max({c, x, 1.0 / x}); };
  for (const auto& col : a) std::for_each(col.begin(), col.end(), widen);
  std::for_each(m.begin(), m.end(), widen);
  return c;
}

CoefficientField make_coefficients(const GridSpec& grid, std::vector<double> V, double v_bar) {
  CoefficientField f;
  const auto n = static_cast<std::size_t>(grid.node_count());
  f.V = std::move(V);
  f.a.assign(1, std::vector<double>(n, 1.0));
  f.m.assign(n, 1.0);
  f.v_bar = v_bar >= 0.0 ? v_bar
                         : (f.V.empty() ? 0.0 : *std::max_element(f.V.begin(), f.V.end()));
  return f;
}

CoefficientField constant_coefficients(const GridSpec& grid, double v) {
  return make_coefficients(grid, std::vector<double>(static_cast<std::size_t>(grid.node_count()), v),
                           v);
}

void validate_coefficients(const GridSpec& grid, const CoefficientField& coeffs) {
  const auto n = static_cast<std::size_t>(grid.node_count());
  if (coeffs.V.size() != n || coeffs.m.size() != n) {
    throw Error(ErrorCode::LengthMismatch, "V and m must have one entry per node");
  }
  if (coeffs.a.size() != 1 && coeffs.a.size() != static_cast<std::size_t>(grid.dim())) {
    throw Error(ErrorCode::LengthMismatch, "a must be scalar or one field per axis");
  }
  for (const auto& col : coeffs.a) {
    if (col.size() != n) throw Error(ErrorCode::LengthMismatch, "a field has wrong length");
    if (std::any_of(col.begin(), col.end(), [](double x) { return !(x > 0.0) || !std::isfinite(x); })) {
      throw Error(ErrorCode::NonpositiveCoefficient, "a must be positive");
    }
  }
  if (std::any_of(coeffs.m.begin(), coeffs.m.end(), [](double x) { return !(x > 0.0) || !std::isfinite(x); })) {
    throw Error(ErrorCode::NonpositiveCoefficient, "m must be positive");
  }
  for (double v : coeffs.V) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw Error(ErrorCode::NegativePotential, "V must be >= 0");
    if (v > coeffs.v_bar) {
      throw Error(ErrorCode::InvalidArgument, "V exceeds the recorded bound v_bar");
    }
  }
}

bool DiscreteOperator::nondegenerate() const noexcept {
  return (potential_mass_.array() > 0.0).any() || (boundary_.array() > 0.0).any();
}

void DiscreteOperator::build_matrix(const Eigen::VectorXd& diagonal) {
  const Index n = dof();
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(edges_.size() * 2 + static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) trips.emplace_back(i, i, diagonal[i]);
  // Both orientations inserted back to back so duplicate sums accumulate identically.
  for (const Edge& e : edges_) {
    trips.emplace_back(e.i, e.j, -e.c);
    trips.emplace_back(e.j, e.i, -e.c);
  }
  K_.resize(n, n);
  K_.setFromTriplets(trips.begin(), trips.end());
  K_.makeCompressed();
}

DiscreteOperator assemble(const GridSpec& grid, CoefficientField coeffs) {
  return assemble(grid, std::make_shared<const CoefficientField>(std::move(coeffs)));
}

DiscreteOperator assemble(const GridSpec& grid, std::shared_ptr<const CoefficientField> coeffs) {
  validate_coefficients(grid, *coeffs);
  DiscreteOperator op;
  op.grid_ = grid;
  op.coeffs_ = std::move(coeffs);
  const auto& cf = *op.coeffs_;
  const Index n = grid.node_count();
  const double h = grid.spacing();
  const double cell_volume = std::pow(h, grid.dim());
  const double face_scale = std::pow(h, grid.dim() - 2);

  op.mass_.resize(n);
  op.potential_mass_.resize(n);
  op.boundary_ = Eigen::VectorXd::Zero(n);
  for (Index i = 0; i < n; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    op.mass_[i] = cf.m[iu] * cell_volume;
    op.potential_mass_[i] = cf.V[iu] * op.mass_[i];
  }

  Eigen::VectorXd degree = Eigen::VectorXd::Zero(n);
  op.edges_.reserve(static_cast<std::size_t>(n * grid.dim()));
  grid.for_each_edge([&](Index i, Index j, int k) {
    const auto iu = static_cast<std::size_t>(i);
    const auto ju = static_cast<std::size_t>(j);
    const double c = face_scale * (cf.m[iu] * cf.a_at(i, k) + cf.m[ju] * cf.a_at(j, k)) / 2.0;
    op.edges_.push_back({i, j, k, c});
    degree[i] += c;
    degree[j] += c;
  });

  op.build_matrix(degree + op.potential_mass_);
  return op;
}

SparseMatrix DiscreteOperator::laplacian() const {
  SparseMatrix lap = K_;
  for (Index i = 0; i < dof(); ++i) lap.coeffRef(i, i) -= potential_mass_[i];
  return lap;
}

Eigen::VectorXd DiscreteOperator::zero_extend(const Eigen::VectorXd& local) const {
  if (local.size() != dof()) throw Error(ErrorCode::LengthMismatch, "vector length != dof");
  if (!restricted_) return local;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(grid_.node_count());
  for (Index q = 0; q < dof(); ++q) out[global_index_[static_cast<std::size_t>(q)]] = local[q];
  return out;
}

Eigen::VectorXd DiscreteOperator::gather(const Eigen::VectorXd& global) const {
  if (global.size() != grid_.node_count()) {
    throw Error(ErrorCode::LengthMismatch, "vector length != node count");
  }
  if (!restricted_) return global;
  Eigen::VectorXd out(dof());
  for (Index q = 0; q < dof(); ++q) out[q] = global[global_index_[static_cast<std::size_t>(q)]];
  return out;
}

double quadratic_form(const DiscreteOperator& op, const Eigen::VectorXd& f) {
  if (f.size() != op.dof()) throw Error(ErrorCode::LengthMismatch, "f length != dof");
  double gradient = 0.0;
  for (const Edge& e : op.edges()) {
    const double d = f[e.i] - f[e.j];
    gradient += e.c * d * d;
  }
  const double diagonal =
      ((op.potential_mass() + op.boundary_coupling()).array() * f.array().square()).sum();
  return gradient + diagonal;
}

DiscreteOperator restrict_to(const DiscreteOperator& op, const IndexSet& subset) {
  if (subset.empty()) throw Error(ErrorCode::EmptyIndexSet, "cannot restrict to an empty set");
  subset.check_range(op.dof());

  std::vector<Index> local(static_cast<std::size_t>(op.dof()), -1);
  for (std::size_t q = 0; q < subset.size(); ++q) local[static_cast<std::size_t>(subset[q])] = static_cast<Index>(q);

  DiscreteOperator r;
  r.grid_ = op.grid_;
  r.coeffs_ = op.coeffs_;
  r.restricted_ = true;
  const auto m = static_cast<Index>(subset.size());
  r.mass_.resize(m);
  r.potential_mass_.resize(m);
  r.boundary_.resize(m);
  r.global_index_.resize(subset.size());
  Eigen::VectorXd diagonal(m);
  for (Index q = 0; q < m; ++q) {
    const Index old = subset[static_cast<std::size_t>(q)];
    r.mass_[q] = op.mass_[old];
    r.potential_mass_[q] = op.potential_mass_[old];
    r.boundary_[q] = op.boundary_[old];
    diagonal[q] = op.K_.coeff(old, old);
    r.global_index_[static_cast<std::size_t>(q)] =
        op.restricted_ ? op.global_index_[static_cast<std::size_t>(old)] : old;
  }
  for (const Edge& e : op.edges_) {
    const Index li = local[static_cast<std::size_t>(e.i)];
    const Index lj = local[static_cast<std::size_t>(e.j)];
    if (li >= 0 && lj >= 0) {
      r.edges_.push_back({li, lj, e.axis, e.c});
    } else if (li >= 0) {
      r.boundary_[li] += e.c;
    } else if (lj >= 0) {
      r.boundary_[lj] += e.c;
    }
  }
  r.build_matrix(diagonal);
  return r;
}

double mass_inner(const Eigen::VectorXd& mass, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  return (mass.array() * x.array() * y.array()).sum();
}

double mass_norm_sq(const Eigen::VectorXd& mass, const Eigen::VectorXd& x) {
  return (mass.array() * x.array().square()).sum();
}

}  // namespace effpot
