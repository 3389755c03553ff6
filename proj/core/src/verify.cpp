#include "effpot/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "effpot/agmon.hpp"
#include "effpot/errors.hpp"
#include "effpot/linalg.hpp"

namespace effpot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Size of the rounding noise in the entries of an approximate eigenvector: residual over the
// stiffness diagonal, never below machine epsilon times the largest entry.
double entry_noise(const DiscreteOperator& op, const Eigen::VectorXd& phi, double mu,
                   const std::optional<IndexSet>& omega) {
  Eigen::VectorXd r = op.apply(phi) - mu * op.mass().cwiseProduct(phi);
  if (omega) {
    const auto in = omega->mask(op.dof());
    for (Index i = 0; i < op.dof(); ++i) {
      if (!in[static_cast<std::size_t>(i)]) r[i] = 0.0;
    }
  }
  return std::max(r.lpNorm<Eigen::Infinity>() / op.stiffness().diagonal().minCoeff(),
                  std::numeric_limits<double>::epsilon() * phi.lpNorm<Eigen::Infinity>());
}

// The cap keeps e^(2 alpha h) times the entry noise, summed over all nodes, below the allowed
// fraction of the norm.
double decay_cap(const DiscreteOperator& op, const Eigen::VectorXd& phi, double mu, double alpha,
                 double norm_sq, const std::optional<IndexSet>& omega) {
  const double noise = entry_noise(op, phi, mu, omega);
  const Eigen::VectorXd diag = op.stiffness().diagonal();
  const double weight = diag.maxCoeff() * 4.0 + op.coefficients().v_bar * op.mass().maxCoeff();
  const double floor = static_cast<double>(op.dof()) * weight * noise * noise;
  double cap = kDecayExponentCap / alpha;
  if (floor > 0.0 && norm_sq > 0.0) {
    cap = std::min(cap, std::max(0.0, std::log(kDecayNoiseFraction * norm_sq / floor)) / (2.0 * alpha));
  }
  return cap;
}

void require_full(const DiscreteOperator& op, const Landscape& landscape) {
  if (op.is_restricted()) {
    throw Error(ErrorCode::InvalidArgument, "check needs the full-grid operator");
  }
  if (landscape.u.size() != op.dof()) {
    throw Error(ErrorCode::LengthMismatch, "landscape does not match the operator");
  }
}

void require_length(const DiscreteOperator& op, const Eigen::VectorXd& v, const char* what) {
  if (v.size() != op.dof()) {
    throw Error(ErrorCode::LengthMismatch, std::string(what) + " length does not match the grid");
  }
}

// log(sum exp(a_k)) over the given exponents; -inf for an empty sum.
class LogSum {
 public:
  void add(double a) {
    if (a == -kInf) return;
    if (a > max_) {
      sum_ = sum_ * std::exp(max_ - a) + 1.0;
      max_ = a;
    } else {
      sum_ += std::exp(a - max_);
    }
  }
  double value() const { return sum_ > 0.0 ? max_ + std::log(sum_) : -kInf; }

 private:
  double max_ = -kInf;
  double sum_ = 0.0;
};

CheckReport skipped(std::string name, std::string why) {
  CheckReport r;
  r.name = std::move(name);
  r.skipped = true;
  r.pass = false;
  r.notes = std::move(why);
  return r;
}

void decide_inequality(CheckReport& r, double log_lhs, double log_rhs) {
  r.lhs = std::exp(log_lhs);
  r.rhs = std::exp(log_rhs);
  r.pass = log_lhs <= log_rhs + std::log(r.slack);
  r.margin = r.rhs - r.lhs;
  r.params["log_lhs"] = log_lhs;
  r.params["log_rhs"] = log_rhs;
}

}  // namespace

double decay_constant(double alpha, double V_bar, double delta) {
  if (alpha == 0.5) return 18.0 * std::numbers::e * (V_bar / delta) * V_bar;
  return (450.0 + 130.0 * V_bar / ((1.0 - alpha) * delta)) * V_bar;
}

double log_cutoff_epsilon(double V_bar, double delta, double S1) {
  return std::log(18.0) + 2.0 + std::log(V_bar / delta) - 0.5 * S1;
}

double log_projection_bound(double V_bar, double delta, double S_bar) {
  return std::log(300.0) + 3.0 * std::log(V_bar / delta) - 0.5 * S_bar;
}

double counting_nbar(double V_bar, double delta, double S_bar) {
  constexpr double cap = 9007199254740992.0;  // 2^53
  if (std::isinf(S_bar)) return cap;
  const double x = 0.5 * S_bar - std::log(300.0) - 3.0 * std::log(V_bar / delta);
  if (x <= 0.0) return 0.0;
  if (x >= std::log(cap)) return cap;
  double n = std::floor(std::exp(x));
  while (n >= 1.0 && std::log(n) >= x) n -= 1.0;
  return n;
}

double cutoff_profile(double t, double S1) {
  if (t <= 0.5 * S1 - 1.0) return 1.0;
  if (t >= 0.5 * S1) return 0.0;
  return 0.5 * S1 - t;
}

CheckReport verify_identity(const DiscreteOperator& op, const Landscape& landscape,
                            const Eigen::VectorXd& f) {
  require_full(op, landscape);
  require_length(op, f, "test vector");
  if (!(landscape.residual <= kStaleLandscapeResidual)) {
    throw Error(ErrorCode::StaleLandscape,
                "landscape residual " + std::to_string(landscape.residual) + " exceeds 1e-10");
  }
  const Eigen::VectorXd& u = landscape.u;
  double grad = 0.0;
  for (const Edge& e : op.edges()) {
    const double d = f[e.i] / u[e.i] - f[e.j] / u[e.j];
    grad += e.c * u[e.i] * u[e.j] * d * d;
  }
  double pot = 0.0;
  for (Index i = 0; i < op.dof(); ++i) pot += f[i] * f[i] / u[i] * op.mass()[i];

  CheckReport r;
  r.name = "identity";
  r.lhs = f.dot(op.stiffness() * f);
  r.rhs = grad + pot;
  r.slack = kIdentityTol;
  r.margin = std::abs(r.lhs - r.rhs);
  const double scale = std::max(std::abs(r.lhs), std::abs(r.rhs));
  r.pass = r.margin <= kIdentityTol * scale;
  r.params["gradient_term"] = grad;
  r.params["potential_term"] = pot;
  r.params["scale"] = scale;
  r.params["landscape_residual"] = landscape.residual;
  return r;
}

CheckReport verify_form_bound(const DiscreteOperator& op, const Landscape& landscape,
                              const Eigen::VectorXd& f) {
  require_full(op, landscape);
  require_length(op, f, "test vector");
  CheckReport r;
  r.name = "form_bound";
  double lhs = 0.0;
  for (Index i = 0; i < op.dof(); ++i) lhs += f[i] * f[i] / landscape.u[i] * op.mass()[i];
  r.lhs = lhs;
  r.rhs = f.dot(op.stiffness() * f);
  r.slack = 1.0 + kIdentityTol;
  r.margin = r.rhs - r.lhs;
  r.pass = r.lhs <= r.rhs + kIdentityTol * std::abs(r.rhs);
  return r;
}

CheckReport verify_eigen_identity(const DiscreteOperator& op, const Landscape& landscape,
                                  const Eigen::VectorXd& phi, const Eigen::VectorXd& g, double mu,
                                  const std::optional<IndexSet>& domain) {
  require_full(op, landscape);
  require_length(op, phi, "eigenvector");
  require_length(op, g, "test function");
  const Eigen::VectorXd& u = landscape.u;
  const Eigen::VectorXd F = g.cwiseProduct(phi);
  if (domain) {
    domain->check_range(op.dof());
    const auto in = domain->mask(op.dof());
    for (Index i = 0; i < op.dof(); ++i) {
      if (!in[static_cast<std::size_t>(i)] && F[i] != 0.0) {
        throw Error(ErrorCode::InadmissibleTestFunction,
                    "g*phi is nonzero at node " + std::to_string(i) + " outside the domain");
      }
    }
  }
  double grad = 0.0, cross = 0.0, cross_abs = 0.0;
  for (const Edge& e : op.edges()) {
    const double d = F[e.i] / u[e.i] - F[e.j] / u[e.j];
    grad += e.c * u[e.i] * u[e.j] * d * d;
    const double dg = g[e.i] - g[e.j];
    const double t = e.c * phi[e.i] * phi[e.j] * dg * dg;
    cross += t;
    cross_abs += std::abs(t);
  }
  double pot = 0.0, pot_abs = 0.0;
  for (Index i = 0; i < op.dof(); ++i) {
    const double t = (1.0 / u[i] - mu) * F[i] * F[i] * op.mass()[i];
    pot += t;
    pot_abs += (1.0 / u[i] + std::abs(mu)) * F[i] * F[i] * op.mass()[i];
  }
  CheckReport r;
  r.name = "eigen_identity";
  r.lhs = grad + pot;
  r.rhs = cross;
  r.slack = kEigenIdentityTol;
  r.margin = std::abs(r.lhs - r.rhs);
  const double scale = grad + pot_abs + cross_abs;
  r.pass = r.margin <= kEigenIdentityTol * scale;
  r.params["mu"] = mu;
  r.params["scale"] = scale;
  return r;
}

std::vector<CheckReport> verify_decay(const DiscreteOperator& op, const Landscape& landscape,
                                      const Eigen::VectorXd& phi, double mu, double mu_bar,
                                      double delta, double alpha,
                                      const std::optional<IndexSet>& omega) {
  require_full(op, landscape);
  require_length(op, phi, "eigenvector");
  const double V_bar = op.coefficients().v_bar;
  const std::string domain = omega ? "localized" : "global";

  std::string why;
  if (!(delta > 0.0 && delta <= V_bar / 10.0 * (1.0 + 1e-15))) why = "delta outside (0, V_bar/10]";
  else if (!(mu_bar + delta <= V_bar)) why = "mu_bar + delta exceeds V_bar";
  else if (!(mu > 0.0)) why = "eigenvalue not positive";
  else if (!(mu <= mu_bar + 1e-12 * std::max(1.0, mu_bar))) why = "eigenvalue above mu_bar";
  else if (!(alpha > 0.0 && alpha < 1.0)) why = "alpha outside (0, 1)";
  if (!why.empty()) {
    return {skipped("decay", "HypothesisViolated: " + why),
            skipped("decay_energy_form", "HypothesisViolated: " + why)};
  }

  IndexSet sources = sublevel_set(landscape, mu_bar + delta);
  if (omega) {
    const auto in = omega->mask(op.dof());
    std::vector<Index> kept;
    for (Index i : sources) {
      if (in[static_cast<std::size_t>(i)]) kept.push_back(i);
    }
    sources = IndexSet::from_sorted(std::move(kept));
  }
  if (sources.empty()) {
    return {skipped("decay", "EmptySourceSet: no well node outside the Dirichlet set"),
            skipped("decay_energy_form", "EmptySourceSet: no well node outside the Dirichlet set")};
  }
  const auto coeffs = op.coefficients_ptr();
  const double norm_sq = mass_norm_sq(op.mass(), phi);
  const Eigen::VectorXd& M = op.mass();
  const Eigen::VectorXd& u = landscape.u;

  // Decay of energy weighted by e^(2 alpha h), h measured with w_{mu_bar}.
  const DistanceField hf = distance_to_set(op.grid(), agmon_weight(landscape, mu_bar, coeffs), sources);
  Eigen::VectorXd share = Eigen::VectorXd::Zero(op.dof());
  for (const Edge& e : op.edges()) {
    const double d = phi[e.i] - phi[e.j];
    const double half = 0.5 * e.c * d * d;
    share[e.i] += half;
    share[e.j] += half;
  }
  // min(h, cap) is again 1-Lipschitz for the Agmon metric and vanishes on the wells, so the
  // bound holds for it; the cap keeps e^(2 alpha h) times rounding noise below ~1e-9.
  const double cap = decay_cap(op, phi, mu, alpha, norm_sq, omega);
  LogSum lhs_sum, uncapped_sum;
  Index far_nodes = 0;
  for (Index i = 0; i < op.dof(); ++i) {
    if (!(hf.h[i] >= 1.0)) continue;
    ++far_nodes;
    const double t = share[i] + V_bar * phi[i] * phi[i] * M[i];
    if (t > 0.0) {
      lhs_sum.add(2.0 * alpha * std::min(hf.h[i], cap) + std::log(t));
      uncapped_sum.add(2.0 * alpha * hf.h[i] + std::log(t));
    }
  }
  CheckReport decay;
  decay.name = "decay";
  decay.slack = kBoundSlack;
  decide_inequality(decay, lhs_sum.value(),
                    std::log(decay_constant(alpha, V_bar, delta)) + std::log(norm_sq));
  decay.params["mu"] = mu;
  decay.params["mu_bar"] = mu_bar;
  decay.params["delta"] = delta;
  decay.params["alpha"] = alpha;
  decay.params["V_bar"] = V_bar;
  decay.params["h_max"] = hf.h.maxCoeff();
  decay.params["far_nodes"] = static_cast<double>(far_nodes);
  decay.params["h_cap"] = cap;
  decay.params["log_lhs_uncapped"] = uncapped_sum.value();
  decay.notes = domain;

  // Energy form with the eigenvalue's own weight w_mu.
  const DistanceField hm = distance_to_set(op.grid(), agmon_weight(landscape, mu, coeffs), sources);
  Eigen::VectorXd F(op.dof());
  for (Index i = 0; i < op.dof(); ++i) {
    const double hc = std::min(hm.h[i], cap);
    const double chi = std::min(hc, 1.0);
    F[i] = phi[i] == 0.0 || chi == 0.0
               ? 0.0
               : std::copysign(chi * std::exp(alpha * hc + std::log(std::abs(phi[i]))), phi[i]);
  }
  double grad = 0.0;
  for (const Edge& e : op.edges()) {
    const double d = F[e.i] / u[e.i] - F[e.j] / u[e.j];
    grad += e.c * u[e.i] * u[e.j] * d * d;
  }
  double pot = 0.0, ring = 0.0;
  for (Index i = 0; i < op.dof(); ++i) {
    pot += std::max(1.0 / u[i] - mu, 0.0) * F[i] * F[i] * M[i];
    if (hm.h[i] > 0.0 && hm.h[i] < 1.0) ring += phi[i] * phi[i] * M[i];
  }
  CheckReport energy;
  energy.name = "decay_energy_form";
  energy.slack = kBoundSlack;
  energy.lhs = grad + (1.0 - alpha * alpha) * pot;
  energy.rhs = (1.0 + 2.0 * alpha) * std::exp(2.0 * alpha) * (V_bar - mu) * ring;
  energy.pass = energy.lhs <= energy.slack * energy.rhs;
  energy.margin = energy.rhs - energy.lhs;
  energy.params = {{"mu", mu}, {"mu_bar", mu_bar}, {"delta", delta}, {"alpha", alpha},
                   {"V_bar", V_bar}, {"transition_mass", ring}, {"h_cap", cap}};
  energy.notes = domain;
  return {decay, energy};
}

CheckReport cutoff_residual_bound(const DiscreteOperator& op, const Landscape& landscape,
                                  const LocalizedEigenSet& localized, std::size_t flat_index,
                                  const WellPartition& partition) {
  require_full(op, landscape);
  const LocalizedPair& pair = localized.flat.at(flat_index);
  const double V_bar = op.coefficients().v_bar;
  const double S1 = partition.S_bar;
  if (partition.single_cluster || !std::isfinite(S1)) {
    return skipped("cutoff_residual", "single cluster: separation is infinite, cutoff is trivial");
  }
  if (pair.value > partition.mu_bar * (1.0 + 1e-12)) {
    return skipped("cutoff_residual", "eigenvalue above mu_bar");
  }
  const auto ell = static_cast<std::size_t>(pair.cluster);
  const DistanceField rho =
      cluster_distance(op.grid(), landscape, op.coefficients_ptr(), partition, ell);
  const Eigen::VectorXd phi = localized.zero_extended(flat_index);
  Eigen::VectorXd eta(op.dof());
  for (Index i = 0; i < op.dof(); ++i) eta[i] = cutoff_profile(rho.h[i], S1);

  // K(eta phi) - mu M(eta phi) = eta (K - mu M) phi + commutator; the first part is the
  // eigensolver residual, the commutator is the cutoff error proper.
  Eigen::VectorXd r = Eigen::VectorXd::Zero(op.dof());
  for (const Edge& e : op.edges()) {
    const double de = eta[e.i] - eta[e.j];
    r[e.i] += e.c * de * phi[e.j];
    r[e.j] -= e.c * de * phi[e.i];
  }
  const Eigen::VectorXd etaphi = eta.cwiseProduct(phi);
  const Eigen::VectorXd r_full =
      op.stiffness() * etaphi - pair.value * op.mass().cwiseProduct(etaphi);

  SparseMatrix A = op.laplacian();
  for (Index i = 0; i < A.rows(); ++i) A.coeffRef(i, i) += V_bar * op.mass()[i];
  const SpdSolver solver(A);
  const double lhs = r.dot(solver.solve(r));
  const double lhs_full = r_full.dot(solver.solve(r_full));

  // The same commutator applied to a vector of noise-sized entries: what rounding alone produces.
  const double noise = entry_noise(op, phi, pair.value, localized.omegas.at(ell));
  Eigen::VectorXd r_noise = Eigen::VectorXd::Zero(op.dof());
  for (const Edge& e : op.edges()) {
    const double de = std::abs(eta[e.i] - eta[e.j]);
    r_noise[e.i] += e.c * de * noise;
    r_noise[e.j] += e.c * de * noise;
  }
  const double floor = r_noise.dot(solver.solve(r_noise));

  CheckReport rep;
  rep.name = "cutoff_residual";
  rep.slack = kBoundSlack;
  const double log_rhs = log_cutoff_epsilon(V_bar, partition.delta, S1) +
                         std::log(V_bar * mass_norm_sq(op.mass(), phi));
  decide_inequality(rep, lhs > 0.0 ? std::log(lhs) : -kInf, log_rhs);
  rep.params = {{"cluster", static_cast<double>(pair.cluster)},
                {"j", static_cast<double>(pair.j)},
                {"mu", pair.value},
                {"mu_bar", partition.mu_bar},
                {"delta", partition.delta},
                {"S1", S1},
                {"V_bar", V_bar},
                {"log_lhs", rep.params["log_lhs"]},
                {"log_rhs", log_rhs},
                {"lhs_with_solver_residual", lhs_full},
                {"resolution_floor", floor}};
  if (!rep.pass && rep.rhs < floor && lhs <= floor) {
    rep.pass = true;
    rep.notes = "bound below numerical resolution";
  }
  return rep;
}

std::vector<CheckReport> verify_projection(const EigenSet& global, const LocalizedEigenSet& localized,
                                           double delta, double S_bar, double V_bar,
                                           double mu_bar) {
  std::vector<CheckReport> out;
  const double log_bound = log_projection_bound(V_bar, delta, S_bar);
  const double loc_complete = localized.complete_below();

  // Eigenvector error ~ residual / window half-width caps how small a measured residual can be.
  double worst_residual = 0.0;
  for (double res : global.residuals) worst_residual = std::max(worst_residual, res);
  for (const auto& w : localized.wells) {
    for (double res : w.residuals) worst_residual = std::max(worst_residual, res);
  }
  const double resolution = std::max(worst_residual / delta, 1e-15);

  auto finish = [&](CheckReport& r, double lhs, double norm_sq, double value) {
    r.slack = kBoundSlack;
    r.lhs = lhs;
    r.rhs = std::exp(log_bound) * norm_sq;
    r.vacuous = r.rhs >= norm_sq;
    const double floor = resolution * resolution * norm_sq;
    r.pass = r.lhs <= r.slack * r.rhs || (r.rhs < floor && r.lhs <= floor);
    if (r.lhs > r.slack * r.rhs && r.pass) r.notes = "bound below numerical resolution";
    r.params["resolution_floor"] = floor;
    r.margin = r.rhs - r.lhs;
    r.params["value"] = value;
    r.params["norm_sq"] = norm_sq;
    r.params["log_bound"] = log_bound;
    r.params["delta"] = delta;
    r.params["S_bar"] = S_bar;
    r.params["V_bar"] = V_bar;
    r.params["mu_bar"] = mu_bar;
  };

  for (std::size_t i = 0; i < global.values.size(); ++i) {
    const double lambda = global.values[i];
    if (lambda > mu_bar - delta) continue;
    CheckReport r;
    r.name = "projection_global";
    r.params["index"] = static_cast<double>(i);
    if (loc_complete <= lambda + delta) {
      r.skipped = true;
      r.notes = "localized basis incomplete in the window";
      out.push_back(r);
      continue;
    }
    const Eigen::VectorXd psi = global.vectors.col(static_cast<Index>(i));
    const Projection p = spectral_project(psi, localized, lambda - delta, lambda + delta);
    finish(r, p.residual_norm_sq, mass_norm_sq(localized.mass, psi), lambda);
    r.params["rank"] = static_cast<double>(p.rank);
    r.degenerate = i < global.degenerate_group.size() && global.degenerate_group[i] >= 0;
    if (r.degenerate) r.notes += r.notes.empty() ? "degenerate group" : "; degenerate group";
    out.push_back(r);
  }

  for (std::size_t f = 0; f < localized.flat.size(); ++f) {
    const LocalizedPair& pr = localized.flat[f];
    if (pr.value > mu_bar - delta) continue;
    CheckReport r;
    r.name = "projection_localized";
    r.params["cluster"] = pr.cluster;
    r.params["j"] = pr.j;
    if (global.complete_below <= pr.value + delta) {
      r.skipped = true;
      r.notes = "global basis incomplete in the window";
      out.push_back(r);
      continue;
    }
    const Eigen::VectorXd phi = localized.zero_extended(f);
    const Projection p = spectral_project(phi, global, localized.mass, pr.value - delta, pr.value + delta);
    finish(r, p.residual_norm_sq, mass_norm_sq(localized.mass, phi), pr.value);
    r.params["rank"] = static_cast<double>(p.rank);
    const auto& dg = localized.wells[static_cast<std::size_t>(pr.cluster)].degenerate_group;
    r.degenerate = static_cast<std::size_t>(pr.j) < dg.size() && dg[static_cast<std::size_t>(pr.j)] >= 0;
    if (r.degenerate) r.notes += r.notes.empty() ? "degenerate group" : "; degenerate group";
    out.push_back(r);
  }
  return out;
}

CheckReport verify_counting(const std::vector<double>& global_values,
                            const std::vector<double>& localized_values, double delta,
                            double mu_bar, double V_bar, double S_bar) {
  const CountingFunction N(global_values);
  const CountingFunction N0(localized_values);
  const double nbar = counting_nbar(V_bar, delta, S_bar);

  // Every breakpoint of N(mu), N0(mu), N(mu - delta), N0(mu - delta); the midpoints of the
  // resulting intervals sample every constancy interval of all four step functions.
  std::vector<double> breaks;
  for (double v : N.values()) breaks.insert(breaks.end(), {v, v + delta});
  for (double v : N0.values()) breaks.insert(breaks.end(), {v, v + delta});
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> points;
  if (!breaks.empty()) points.push_back(breaks.front() - 1.0);
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    points.push_back(0.5 * (breaks[k] + breaks[k + 1]));
  }
  points.insert(points.end(), breaks.begin(), breaks.end());
  points.push_back(mu_bar);
  std::sort(points.begin(), points.end());

  std::size_t violations = 0, evaluated = 0;
  double worst = kInf;
  for (double mu : points) {
    if (mu > mu_bar) break;
    ++evaluated;
    const double a = std::min(nbar, static_cast<double>(N0(mu - delta)));
    const double b = std::min(nbar, static_cast<double>(N(mu - delta)));
    const double s1 = static_cast<double>(N(mu)) - a;
    const double s2 = static_cast<double>(N0(mu)) - b;
    if (s1 < 0.0) ++violations;
    if (s2 < 0.0) ++violations;
    worst = std::min({worst, s1, s2});
  }
  CheckReport r;
  r.name = "counting";
  r.lhs = static_cast<double>(violations);
  r.rhs = 0.0;
  r.pass = violations == 0;
  r.margin = evaluated > 0 ? worst : 0.0;
  r.vacuous = nbar == 0.0;
  r.params = {{"N_bar", nbar},   {"delta", delta}, {"mu_bar", mu_bar},
              {"V_bar", V_bar}, {"S_bar", S_bar}, {"sweep_points", static_cast<double>(evaluated)}};
  if (r.vacuous) r.notes = "separation too small: N_bar = 0";
  return r;
}

CheckReport empirical_interlacing(const std::vector<double>& global_values,
                                  const std::vector<double>& localized_values, double delta,
                                  std::size_t count) {
  const CountingFunction N(global_values);
  const CountingFunction N0(localized_values);
  std::size_t violations = 0;
  double worst = kInf;
  const std::size_t n = std::min(count, N.values().size());
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = N.values()[k];
    const double lo = static_cast<double>(N(lambda)) - static_cast<double>(N0(lambda - delta));
    const double hi = static_cast<double>(N0(lambda + delta)) - static_cast<double>(N(lambda));
    if (lo < 0.0 || hi < 0.0) ++violations;
    worst = std::min({worst, lo, hi});
  }
  CheckReport r;
  r.name = "interlacing_empirical";
  r.lhs = static_cast<double>(violations);
  r.rhs = 0.0;
  r.pass = violations == 0;
  r.margin = n > 0 ? worst : 0.0;
  r.params = {{"delta", delta}, {"count", static_cast<double>(n)}};
  r.notes = "informational";
  return r;
}

CheckReport verify_landscape_floor(const Landscape& landscape, double V_bar) {
  CheckReport r;
  r.name = "landscape_floor";
  r.lhs = 1.0 / V_bar - 1e-10;
  r.rhs = landscape.u.size() > 0 ? landscape.u.minCoeff() : 0.0;
  r.margin = r.rhs - r.lhs;
  r.pass = r.rhs >= r.lhs && r.rhs > 0.0;
  r.params["V_bar"] = V_bar;
  if (!(r.rhs > 0.0)) r.notes = "NonpositiveLandscape";
  return r;
}

}  // namespace effpot
