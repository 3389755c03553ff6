#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "effpot/eigensolve.hpp"
#include "effpot/landscape.hpp"
#include "effpot/operator.hpp"
#include "effpot/wells.hpp"

namespace effpot {

/// One numerical certification. For inequality checks pass <=> lhs <= rhs * slack;
/// for identity checks pass <=> |lhs - rhs| <= slack * scale, with the scale in `params`.
struct CheckReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
  /// rhs - lhs for inequalities, |lhs - rhs| for identities.
  double margin = 0.0;
  double slack = 1.0;
  /// The bound is at least the norm it controls, so it carries no information.
  bool vacuous = false;
  /// Hypotheses failed or geometry degenerate; nothing was checked.
  bool skipped = false;
  /// Member of a numerically degenerate eigenvalue group.
  bool degenerate = false;
  std::map<std::string, double> params;
  std::string notes;
};

/// Relative tolerance of the exact quadratic-form identity.
constexpr double kIdentityTol = 1e-9;
constexpr double kEigenIdentityTol = 1e-8;
/// Multiplicative margin on continuum-derived inequalities.
constexpr double kBoundSlack = 2.0;
/// The decay weight uses min(h, cap): alpha cap is at most kDecayExponentCap and small enough
/// that the eigenvector's rounding noise, estimated from its residual, adds at most
/// kDecayNoiseFraction * ||phi||_M^2 to either weighted sum.
constexpr double kDecayExponentCap = 29.0;
constexpr double kDecayNoiseFraction = 1e-6;
/// Largest landscape residual accepted by the identity checks.
constexpr double kStaleLandscapeResidual = 1e-10;

/// f^T K f against sum_edges c u_i u_j (f_i/u_i - f_j/u_j)^2 + sum f_i^2/u_i M_ii.
/// Throws StaleLandscape when the landscape residual exceeds 1e-10.
CheckReport verify_identity(const DiscreteOperator& op, const Landscape& landscape,
                            const Eigen::VectorXd& f);

/// sum f_i^2/u_i M_ii <= f^T K f.
CheckReport verify_form_bound(const DiscreteOperator& op, const Landscape& landscape,
                              const Eigen::VectorXd& f);

/// Discrete eigen-identity for a full-grid vector phi solving (K - mu M) phi = 0 on `domain`
/// (all nodes when absent) and vanishing off it:
///   sum c u_i u_j (g_i phi_i/u_i - g_j phi_j/u_j)^2 + sum (1/u_i - mu)(g_i phi_i)^2 M_ii
///     = sum c phi_i phi_j (g_i - g_j)^2.
/// The tolerance is relative to the total magnitude of the summed terms.
/// Throws InadmissibleTestFunction if g*phi is nonzero off the domain.
CheckReport verify_eigen_identity(const DiscreteOperator& op, const Landscape& landscape,
                                  const Eigen::VectorXd& phi, const Eigen::VectorXd& g, double mu,
                                  const std::optional<IndexSet>& domain = std::nullopt);

/// Weighted energy decay away from the wells for a full-grid eigenvector phi with eigenvalue mu.
/// `omega` marks the domain of a localized pair (K = complement); absent for global pairs.
/// Returns the decay check followed by the energy-form variant.
std::vector<CheckReport> verify_decay(const DiscreteOperator& op, const Landscape& landscape,
                                      const Eigen::VectorXd& phi, double mu, double mu_bar,
                                      double delta, double alpha,
                                      const std::optional<IndexSet>& omega = std::nullopt);

/// Dual-norm bound on the residual of the cut-off localized eigenvector eta*phi. When the bound
/// lies below the commutator of noise-sized entries, that floor is the pass threshold.
CheckReport cutoff_residual_bound(const DiscreteOperator& op, const Landscape& landscape,
                                  const LocalizedEigenSet& localized, std::size_t flat_index,
                                  const WellPartition& partition);

/// Projection residuals in both directions for every pair at or below mu_bar - delta. A pair also
/// passes when bound and residual both sit below the resolution floor (max residual / delta)^2.
std::vector<CheckReport> verify_projection(const EigenSet& global, const LocalizedEigenSet& localized,
                                           double delta, double S_bar, double V_bar,
                                           double mu_bar);

/// Theorem-form interlacing of the global (N) and localized (N0) counting functions.
CheckReport verify_counting(const std::vector<double>& global_values,
                            const std::vector<double>& localized_values, double delta,
                            double mu_bar, double V_bar, double S_bar);

/// Informational N0(l - delta) <= N(l) <= N0(l + delta) on the first `count` global values.
CheckReport empirical_interlacing(const std::vector<double>& global_values,
                                  const std::vector<double>& localized_values, double delta,
                                  std::size_t count);

/// min u >= 1/V_bar - 1e-10 and min u > 0.
CheckReport verify_landscape_floor(const Landscape& landscape, double V_bar);

/// Per unit ||phi||_M^2: 18e (V/d) V for alpha = 1/2, else (450 + 130 V/((1-alpha) d)) V.
double decay_constant(double alpha, double V_bar, double delta);
/// log of 18 e^2 (V/d) e^(-S1/2).
double log_cutoff_epsilon(double V_bar, double delta, double S1);
/// log of 300 (V/d)^3 e^(-S/2).
double log_projection_bound(double V_bar, double delta, double S_bar);
/// Largest N with 300 N (V/d)^3 < e^(S/2); saturates at 2^53 (and for S = +inf).
double counting_nbar(double V_bar, double delta, double S_bar);

/// Cutoff profile: 1 below S1/2 - 1, linear to 0 at S1/2.
double cutoff_profile(double t, double S1);

}  // namespace effpot
