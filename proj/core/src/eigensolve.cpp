#include "effpot/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "effpot/errors.hpp"
#include "effpot/linalg.hpp"
#include "effpot/prng.hpp"

namespace effpot {

namespace {

SparseMatrix shifted_stiffness(const DiscreteOperator& op, double shift) {
  SparseMatrix K = op.stiffness();
  if (shift != 0.0) {
    for (Index i = 0; i < K.rows(); ++i) K.coeffRef(i, i) -= shift * op.mass()[i];
  }
  return K;
}

// y -> D (K - shift M)^-1 D y with D = M^(1/2): symmetric, eigenvalues 1/(lambda - shift).
class InvertedOperator {
 public:
  InvertedOperator(const DiscreteOperator& op, double shift)
      : d_(op.mass().array().sqrt()), solver_(shifted_stiffness(op, shift)) {}

  Eigen::VectorXd apply(const Eigen::VectorXd& y) const {
    return d_.cwiseProduct(solver_.solve(d_.cwiseProduct(y), 1));
  }
  const Eigen::VectorXd& d() const noexcept { return d_; }

 private:
  Eigen::VectorXd d_;
  SpdSolver solver_;
};

void fill_random(Eigen::Ref<Eigen::VectorXd> v, Rng& rng) {
  for (Index i = 0; i < v.size(); ++i) v[i] = rng.uniform() - 0.5;
}

// Orthogonalize r against Q[:, :m] (two classical Gram-Schmidt passes), normalize and
// store as column m. False if r is numerically inside the span.
bool append_column(Eigen::MatrixXd& Q, Index m, Eigen::VectorXd r) {
  const double r0 = r.norm();
  if (!(r0 > 0.0) || !std::isfinite(r0)) return false;
  for (int pass = 0; pass < 2 && m > 0; ++pass) {
    const Eigen::VectorXd coef = Q.leftCols(m).transpose() * r;
    r.noalias() -= Q.leftCols(m) * coef;
  }
  const double nrm = r.norm();
  if (nrm <= 1e-10 * r0) return false;
  Q.col(m) = r / nrm;
  return true;
}

struct RitzPairs {
  std::vector<double> values;
  Eigen::MatrixXd X;
  std::vector<double> residuals;
  bool converged = false;
};

double residual_of(const DiscreteOperator& op, double lambda, const Eigen::VectorXd& x,
                   Eigen::VectorXd& scratch) {
  const Eigen::VectorXd Mx = op.mass().cwiseProduct(x);
  scratch.noalias() = op.stiffness() * x;
  scratch -= lambda * Mx;
  const double den = Mx.norm();
  return den > 0.0 ? scratch.norm() / den : std::numeric_limits<double>::infinity();
}

bool within_tol(double res, double lambda, double tol) {
  return res <= tol * std::max(1.0, std::abs(lambda));
}

// Top-k Ritz pairs of the projected matrix, mapped back to (lambda, x) with residuals.
RitzPairs rayleigh_ritz(const DiscreteOperator& op, const InvertedOperator& A,
                        const Eigen::MatrixXd& Q, const Eigen::MatrixXd& H, Index m, int k,
                        double shift, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H.topLeftCorner(m, m));
  RitzPairs out;
  out.X.resize(Q.rows(), k);
  out.converged = true;
  Eigen::VectorXd scratch(Q.rows());
  for (int i = 0; i < k; ++i) {
    const Index col = m - 1 - i;
    const double theta = es.eigenvalues()[col];
    if (!(theta > 0.0)) {
      out.converged = false;
      out.values.push_back(std::numeric_limits<double>::infinity());
      out.residuals.push_back(std::numeric_limits<double>::infinity());
      out.X.col(i).setZero();
      continue;
    }
    const double lambda = shift + 1.0 / theta;
    Eigen::VectorXd x = (Q.leftCols(m) * es.eigenvectors().col(col)).cwiseQuotient(A.d());
    x /= std::sqrt(mass_norm_sq(op.mass(), x));
    const double res = residual_of(op, lambda, x, scratch);
    out.values.push_back(lambda);
    out.residuals.push_back(res);
    out.X.col(i) = x;
    if (!within_tol(res, lambda, tol)) out.converged = false;
  }
  return out;
}

RitzPairs block_krylov(const DiscreteOperator& op, int k, const EigenOptions& o,
                       std::uint64_t seed) {
  const Index n = op.dof();
  const Index b = std::clamp<Index>(o.block_size, 1, n);
  Index mb = o.max_basis > 0 ? o.max_basis : std::max<Index>(3 * k + 2 * b, k + 60);
  mb = std::min(std::max<Index>(mb, k + b), n);
  if (mb < k) throw Error(ErrorCode::KExceedsDof, "basis cannot hold k vectors");

  const InvertedOperator A(op, o.shift);
  Rng rng(seed);
  Eigen::MatrixXd Q(n, mb), AQ(n, mb);
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(mb, mb);
  Index m = 0;
  Eigen::MatrixXd R(n, b);
  for (Index c = 0; c < b; ++c) fill_random(R.col(c), rng);

  Index next_check = std::min<Index>(mb, k + b);
  RitzPairs last;
  for (int restart = 0; restart <= o.max_restarts; ++restart) {
    while (m < mb) {
      const Index start = m;
      for (Index c = 0; c < R.cols() && m < mb; ++c) {
        bool ok = append_column(Q, m, R.col(c));
        for (int tries = 0; !ok && tries < 3; ++tries) {
          Eigen::VectorXd r(n);
          fill_random(r, rng);
          ok = append_column(Q, m, r);
        }
        if (!ok) continue;
        AQ.col(m) = A.apply(Q.col(m));
        ++m;
      }
      if (m == start) break;
      const Index added = m - start;
      H.block(0, start, m, added).noalias() = Q.leftCols(m).transpose() * AQ.middleCols(start, added);
      const Eigen::MatrixXd blk = H.block(start, start, added, added);
      H.block(start, start, added, added) = 0.5 * (blk + blk.transpose());
      H.block(start, 0, added, start) = H.block(0, start, start, added).transpose();
      R = AQ.middleCols(start, added);
      if (m >= next_check && m >= k) {
        last = rayleigh_ritz(op, A, Q, H, m, k, o.shift, o.tol);
        if (last.converged) return last;
        next_check = std::min<Index>(mb, m + std::max<Index>(b, (mb - m) / 2));
      }
    }
    if (m < k) break;
    if (m == n) {
      // The basis spans the whole space: the Ritz pairs are exact up to rounding.
      last = rayleigh_ritz(op, A, Q, H, m, k, o.shift, o.tol);
      return last;
    }

    // Thick restart: keep the leading k + b Ritz vectors, continue from their residuals.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H.topLeftCorner(m, m));
    const Index p = std::max<Index>(k, std::min<Index>(m - b, k + b));
    Eigen::MatrixXd S(m, p);
    Eigen::VectorXd theta(p);
    for (Index i = 0; i < p; ++i) {
      S.col(i) = es.eigenvectors().col(m - 1 - i);
      theta[i] = es.eigenvalues()[m - 1 - i];
    }
    Eigen::MatrixXd Y = Q.leftCols(m) * S;
    Eigen::MatrixXd AY = AQ.leftCols(m) * S;
    Q.leftCols(p) = Y;
    AQ.leftCols(p) = AY;
    H.setZero();
    const Eigen::MatrixXd Hp = Y.transpose() * AY;
    H.topLeftCorner(p, p) = 0.5 * (Hp + Hp.transpose());
    m = p;

    std::vector<Index> pick;
    for (Index i = 0; i < k && static_cast<Index>(pick.size()) < b; ++i) {
      if (i >= static_cast<Index>(last.residuals.size()) ||
          !within_tol(last.residuals[i], last.values[i], o.tol)) {
        pick.push_back(i);
      }
    }
    for (Index i = 0; static_cast<Index>(pick.size()) < b && i < p; ++i) {
      if (std::find(pick.begin(), pick.end(), i) == pick.end()) pick.push_back(i);
    }
    R.resize(n, static_cast<Index>(pick.size()));
    for (std::size_t c = 0; c < pick.size(); ++c) {
      const Index i = pick[c];
      R.col(static_cast<Index>(c)) = AY.col(i) - theta[i] * Y.col(i);
    }
    next_check = std::min<Index>(mb, m + std::max<Index>(b, (mb - m) / 2));
  }
  throw Error(ErrorCode::NoConvergence,
              "block Krylov eigensolver did not reach the residual tolerance");
}

void normalize_signs(Eigen::MatrixXd& X) {
  for (Index c = 0; c < X.cols(); ++c) {
    Index arg = 0;
    X.col(c).cwiseAbs().maxCoeff(&arg);
    if (X(arg, c) < 0.0) X.col(c) = -X.col(c);
  }
}

void mark_degenerate(EigenSet& set, double scale) {
  set.degenerate_group.assign(set.values.size(), -1);
  int group = -1;
  for (std::size_t i = 1; i < set.values.size(); ++i) {
    if (set.values[i] - set.values[i - 1] < 1e-10 * scale) {
      if (set.degenerate_group[i - 1] < 0) set.degenerate_group[i - 1] = ++group;
      set.degenerate_group[i] = set.degenerate_group[i - 1];
    }
  }
}

void finish(const DiscreteOperator& op, EigenSet& set) {
  normalize_signs(set.vectors);
  set.residuals.resize(set.values.size());
  Eigen::VectorXd scratch(op.dof());
  for (std::size_t i = 0; i < set.values.size(); ++i) {
    set.residuals[i] = residual_of(op, set.values[i], set.vectors.col(static_cast<Index>(i)), scratch);
  }
  const double v_bar = op.coefficients().v_bar;
  mark_degenerate(set, v_bar > 0.0 ? v_bar : 1.0);
}

bool use_dense(const DiscreteOperator& op, int k, const EigenOptions& o) {
  const Index n = op.dof();
  if (o.method == EigenMethod::Dense) return true;
  if (o.method == EigenMethod::Krylov) return false;
  if (n > o.dense_max_dof) return false;
  if (n <= 256) return true;
  const Index basis = std::max<Index>(3 * k + 2 * o.block_size, k + 60);
  return 2 * basis >= n;
}

EigenSet smallest_once(const DiscreteOperator& op, int k, const EigenOptions& o,
                       std::uint64_t seed) {
  EigenSet set;
  set.seed = seed;
  if (use_dense(op, k, o)) {
    EigenSet all = dense_eigensolve(op);
    set.method = "dense";
    set.values.assign(all.values.begin(), all.values.begin() + k);
    set.vectors = all.vectors.leftCols(k);
    set.complete_below = static_cast<Index>(k) < op.dof()
                             ? all.values[static_cast<std::size_t>(k)]
                             : std::numeric_limits<double>::infinity();
    return set;
  }
  try {
    RitzPairs rp = block_krylov(op, k, o, seed);
    std::vector<Index> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return rp.values[a] < rp.values[b]; });
    set.method = "block-krylov-shift-invert";
    set.vectors.resize(op.dof(), k);
    for (int i = 0; i < k; ++i) {
      set.values.push_back(rp.values[order[i]]);
      set.vectors.col(i) = rp.X.col(order[i]);
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoConvergence || op.dof() > o.dense_max_dof) throw;
    EigenOptions dense = o;
    dense.method = EigenMethod::Dense;
    set = smallest_once(op, k, dense, seed);
    set.method = "dense-fallback";
  }
  return set;
}

}  // namespace

double eigen_residual(const DiscreteOperator& op, double lambda, const Eigen::VectorXd& x) {
  Eigen::VectorXd scratch(op.dof());
  return residual_of(op, lambda, x, scratch);
}

EigenSet dense_eigensolve(const DiscreteOperator& op) {
  const Index n = op.dof();
  const Eigen::VectorXd dinv = op.mass().array().sqrt().inverse();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  const SparseMatrix& K = op.stiffness();
  for (Index c = 0; c < K.outerSize(); ++c) {
    for (SparseMatrix::InnerIterator it(K, c); it; ++it) {
      A(it.row(), it.col()) = it.value() * dinv[it.row()] * dinv[it.col()];
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::NoConvergence, "dense symmetric eigensolver failed");
  }
  EigenSet set;
  set.method = "dense";
  set.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
  set.vectors = dinv.asDiagonal() * es.eigenvectors();
  set.complete_below = std::numeric_limits<double>::infinity();
  finish(op, set);
  return set;
}

EigenSet eig_smallest(const DiscreteOperator& op, int k, const EigenOptions& options) {
  if (k < 1 || k > op.dof()) {
    throw Error(ErrorCode::KExceedsDof, "requested " + std::to_string(k) +
                                            " eigenpairs of an operator with " +
                                            std::to_string(op.dof()) + " dof");
  }
  if (!op.nondegenerate()) {
    throw Error(ErrorCode::DegeneratePotential, "operator has no potential or boundary coupling");
  }
  int want = k;
  std::uint64_t seed = options.seed;
  EigenSet set;
  for (int attempt = 0;; ++attempt) {
    set = smallest_once(op, want, options, seed);
    if (set.method.rfind("dense", 0) == 0 && set.method != "dense-fallback") break;
    if (!options.verify_inertia) break;
    // Every eigenvalue below the probe must already be in the set.
    const double top = set.values.back();
    double probe = top + std::max(1e-8, 1e3 * options.tol) * std::max(1.0, std::abs(top));
    Index count = inertia_below(op.stiffness(), op.mass(), probe);
    if (count < 0) {
      probe = std::nextafter(probe * (1.0 + 1e-12), std::numeric_limits<double>::infinity());
      count = inertia_below(op.stiffness(), op.mass(), probe);
    }
    const auto found = static_cast<Index>(
        std::count_if(set.values.begin(), set.values.end(), [&](double v) { return v < probe; }));
    if (count >= 0 && count <= found) {
      set.complete_below = probe;
      break;
    }
    if (attempt >= 3 || want >= op.dof()) {
      throw Error(ErrorCode::NoConvergence, "eigensolver missed eigenvalues below " +
                                                std::to_string(probe) + " after restarts");
    }
    want = static_cast<int>(std::min<Index>(op.dof(), std::max<Index>(count, want) + options.block_size));
    seed += 0x9e3779b97f4a7c15ULL;
  }
  if (static_cast<int>(set.values.size()) > k) {
    set.complete_below = std::min(set.complete_below, set.values[static_cast<std::size_t>(k)]);
    set.values.resize(static_cast<std::size_t>(k));
    set.vectors = set.vectors.leftCols(k).eval();
  }
  finish(op, set);
  return set;
}

EigenSet eig_below(const DiscreteOperator& op, double threshold, int min_count,
                   const EigenOptions& options) {
  const Index n = op.dof();
  min_count = static_cast<int>(std::min<Index>(std::max(min_count, 0), n));
  const double probe = threshold + 1e-12 * std::max(1.0, std::abs(threshold));
  Index below = inertia_below(op.stiffness(), op.mass(), probe);
  if (below < 0) below = inertia_below(op.stiffness(), op.mass(), probe * (1.0 + 1e-12));
  if (below < 0) below = 0;
  const int k = static_cast<int>(std::min<Index>(n, std::max<Index>(below, min_count) + 1));
  EigenSet set = eig_smallest(op, std::max(k, 1), options);
  std::size_t keep = 0;
  while (keep < set.values.size() &&
         (set.values[keep] <= threshold || static_cast<int>(keep) < min_count)) {
    ++keep;
  }
  if (keep < set.values.size()) {
    set.complete_below = std::min(set.complete_below, set.values[keep]);
    set.values.resize(keep);
    set.residuals.resize(keep);
    set.degenerate_group.resize(keep);
    set.vectors = set.vectors.leftCols(static_cast<Index>(keep)).eval();
  }
  return set;
}

Eigen::VectorXd LocalizedEigenSet::zero_extended(std::size_t flat_index) const {
  const LocalizedPair& p = flat.at(flat_index);
  const auto l = static_cast<std::size_t>(p.cluster);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(node_count);
  const IndexSet& om = omegas[l];
  for (std::size_t q = 0; q < om.size(); ++q) {
    v[om[q]] = wells[l].vectors(static_cast<Index>(q), p.j);
  }
  return v;
}

std::vector<double> LocalizedEigenSet::values() const {
  std::vector<double> out;
  out.reserve(flat.size());
  for (const auto& p : flat) out.push_back(p.value);
  return out;
}

double LocalizedEigenSet::complete_below() const {
  double c = std::numeric_limits<double>::infinity();
  for (const auto& w : wells) c = std::min(c, w.complete_below);
  return c;
}

LocalizedEigenSet eig_localized(const DiscreteOperator& op, const WellPartition& partition,
                                int k_per_well, double mu_bar, const EigenOptions& options) {
  if (op.is_restricted()) {
    throw Error(ErrorCode::InvalidArgument, "localized eigenproblems need the full-grid operator");
  }
  LocalizedEigenSet out;
  out.omegas = partition.omegas;
  out.mass = op.mass();
  out.node_count = op.dof();
  for (std::size_t l = 0; l < partition.omegas.size(); ++l) {
    const IndexSet& om = partition.omegas[l];
    if (om.empty()) throw Error(ErrorCode::EmptyOmega, "Omega_" + std::to_string(l) + " is empty");
    const DiscreteOperator sub = restrict_to(op, om);
    EigenOptions o = options;
    o.seed = options.seed + l;
    EigenSet set = eig_below(sub, mu_bar, k_per_well, o);
    set.domain = "omega_" + std::to_string(l);
    for (std::size_t j = 0; j < set.values.size(); ++j) {
      out.flat.push_back({static_cast<int>(l), static_cast<int>(j), set.values[j]});
    }
    out.wells.push_back(std::move(set));
  }
  std::stable_sort(out.flat.begin(), out.flat.end(),
                   [](const LocalizedPair& a, const LocalizedPair& b) { return a.value < b.value; });
  return out;
}

CountingFunction::CountingFunction(std::vector<double> values) : values_(std::move(values)) {
  std::sort(values_.begin(), values_.end());
}

std::size_t CountingFunction::operator()(double lambda) const {
  return static_cast<std::size_t>(std::upper_bound(values_.begin(), values_.end(), lambda) -
                                  values_.begin());
}

CountingFunction counting(std::vector<double> values) { return CountingFunction(std::move(values)); }

Projection spectral_project(const Eigen::VectorXd& v, const LocalizedEigenSet& basis, double a,
                            double b) {
  if (v.size() != basis.node_count) {
    throw Error(ErrorCode::LengthMismatch, "vector length does not match the grid");
  }
  Projection out;
  out.projection = Eigen::VectorXd::Zero(v.size());
  for (const auto& p : basis.flat) {
    if (!(p.value > a && p.value < b)) continue;
    const auto l = static_cast<std::size_t>(p.cluster);
    const IndexSet& om = basis.omegas[l];
    const auto phi = basis.wells[l].vectors.col(p.j);
    double coef = 0.0;
    for (std::size_t q = 0; q < om.size(); ++q) {
      coef += v[om[q]] * phi[static_cast<Index>(q)] * basis.mass[om[q]];
    }
    for (std::size_t q = 0; q < om.size(); ++q) {
      out.projection[om[q]] += coef * phi[static_cast<Index>(q)];
    }
    ++out.rank;
  }
  out.residual_norm_sq = mass_norm_sq(basis.mass, v - out.projection);
  return out;
}

Projection spectral_project(const Eigen::VectorXd& v, const EigenSet& basis,
                            const Eigen::VectorXd& mass, double a, double b) {
  if (v.size() != basis.vectors.rows() || mass.size() != v.size()) {
    throw Error(ErrorCode::LengthMismatch, "vector length does not match the eigenbasis");
  }
  Projection out;
  out.projection = Eigen::VectorXd::Zero(v.size());
  const Eigen::VectorXd Mv = mass.cwiseProduct(v);
  for (std::size_t i = 0; i < basis.values.size(); ++i) {
    if (!(basis.values[i] > a && basis.values[i] < b)) continue;
    const auto col = basis.vectors.col(static_cast<Index>(i));
    out.projection += col.dot(Mv) * col;
    ++out.rank;
  }
  out.residual_norm_sq = mass_norm_sq(mass, v - out.projection);
  return out;
}

}  // namespace effpot
