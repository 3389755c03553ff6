// Acceptance suite: one PASS/FAIL line per criterion.
//
//   effpot_acceptance [--only N]... [--out DIR]
//
// Criteria 5-9 write their outputs below DIR/run1/criterionN; criterion 10 reruns them into
// DIR/run2 (and into DIR/run1 first when that tree is missing) and compares byte for byte.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <thread>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "effpot/demo2d.hpp"
#include "effpot/eigensolve.hpp"
#include "effpot/ensemble.hpp"
#include "effpot/errors.hpp"
#include "effpot/io.hpp"
#include "effpot/verify.hpp"
#include "effpot/wells.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace effpot;
using json = nlohmann::ordered_json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string summary;
};

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

// ----------------------------------------------------------------------------- criteria 1, 2

struct RandomInstance {
  GridSpec grid;
  std::shared_ptr<CoefficientField> coeffs;
};

std::vector<RandomInstance> identity_instances() {
  Rng rng(20240601);
  std::vector<RandomInstance> out;
  for (int k = 0; k < 50; ++k) {
    const Topology topo = rng.bernoulli(0.5) ? Topology::Torus : Topology::Box;
    const int p = 1 + static_cast<int>(rng.next() % 4);
    GridSpec g;
    if (k % 2 == 0) {
      const int cap = 1023 / p;
      g = build_grid(1, {2 + static_cast<int>(rng.next() % std::uint64_t(cap - 1))}, p, topo);
    } else {
      const int cap = 63 / p;
      g = build_grid(2, {1 + static_cast<int>(rng.next() % std::uint64_t(cap)),
                         1 + static_cast<int>(rng.next() % std::uint64_t(cap))},
                     p, topo);
    }
    const double v_bar = 0.5 + 7.5 * rng.uniform();
    auto c = std::make_shared<CoefficientField>(testing::random_field(g, rng, v_bar, rng.bernoulli(0.5)));
    out.push_back({g, c});
  }
  return out;
}

Outcome criterion1() {
  const auto t0 = Clock::now();
  Rng rng(77);
  int passed = 0;
  double worst = 0.0;
  Index largest = 0;
  const auto instances = identity_instances();
  for (const auto& inst : instances) {
    const DiscreteOperator op = assemble(inst.grid, inst.coeffs);
    const Landscape land = solve_landscape(op);
    const Eigen::VectorXd f = testing::random_vector(rng, op.dof());
    const CheckReport r = verify_identity(op, land, f);
    worst = std::max(worst, r.margin / std::abs(r.rhs));
    largest = std::max(largest, op.dof());
    if (r.pass) ++passed;
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = passed == 50 && worst <= 1e-9 && secs < 30.0;
  o.summary = std::to_string(passed) + "/50 identities hold, max rel. discrepancy " + fmt(worst) +
              ", largest " + std::to_string(largest) + " nodes, " + fmt(secs, 3) + " s (< 30 s)";
  return o;
}

Outcome criterion2() {
  int passed = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (const auto& inst : identity_instances()) {
    const Landscape land = solve_landscape(assemble(inst.grid, inst.coeffs));
    const CheckReport r = verify_landscape_floor(land, inst.coeffs->v_bar);
    worst_margin = std::min(worst_margin, r.margin);
    if (r.pass && land.u.minCoeff() > 0.0) ++passed;
  }
  Outcome o;
  o.pass = passed == 50;
  o.summary = std::to_string(passed) + "/50 instances with min u >= 1/V_bar - 1e-10, smallest margin " +
              fmt(worst_margin);
  return o;
}

// ----------------------------------------------------------------------------- criterion 3

Outcome criterion3() {
  int global_ok = 0, wells_total = 0, wells_ok = 0;
  double worst = 0.0;
  Index largest = 0;
  EigenOptions krylov;
  krylov.method = EigenMethod::Krylov;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Instance inst;
    double delta = 0.0;
    if (seed % 2 == 1) {
      const int T = 100 + static_cast<int>(seed) * 40;  // 140 .. 460, p = 4
      inst = gen_uniform_1d(seed, T, 4.0, 4);
      delta = 1.0 / T;
    } else {
      inst = gen_bernoulli_2d(seed, 22, 4.0, 0.3, 2);
      delta = 0.01;
    }
    const DiscreteOperator op = assemble(inst.grid, inst.coeffs);
    largest = std::max(largest, op.dof());
    krylov.seed = 1000 + seed;
    const EigenSet fast = eig_smallest(op, 10, krylov);
    const EigenSet ref = dense_eigensolve(op);
    bool ok = fast.method == "block-krylov-shift-invert";
    for (std::size_t j = 0; j < 10; ++j) {
      const double rel = std::abs(fast.values[j] - ref.values[j]) / std::abs(ref.values[j]);
      worst = std::max(worst, rel);
      ok = ok && rel <= 1e-8;
    }
    if (ok) ++global_ok;

    const Landscape land = solve_landscape(op);
    const WellPartition part = build_partition(inst.grid, land, inst.coeffs, ref.values[2], delta);
    for (const auto& omega : part.omegas) {
      const DiscreteOperator r = restrict_to(op, omega);
      const int k = static_cast<int>(std::min<Index>(10, r.dof()));
      const EigenSet lf = eig_smallest(r, k, krylov);
      const EigenSet lr = dense_eigensolve(r);
      bool wok = true;
      for (int j = 0; j < k; ++j) {
        const double rel = std::abs(lf.values[std::size_t(j)] - lr.values[std::size_t(j)]) /
                           std::abs(lr.values[std::size_t(j)]);
        worst = std::max(worst, rel);
        wok = wok && rel <= 1e-8;
      }
      ++wells_total;
      if (wok) ++wells_ok;
    }
  }
  Outcome o;
  o.pass = global_ok == 10 && wells_ok == wells_total && wells_total > 0;
  o.summary = std::to_string(global_ok) + "/10 global and " + std::to_string(wells_ok) + "/" +
              std::to_string(wells_total) + " per-well solves match dense to 1e-8 (max rel. " +
              fmt(worst) + ", up to " + std::to_string(largest) + " dof)";
  return o;
}

// ----------------------------------------------------------------------------- criterion 4

Outcome criterion4() {
  Rng rng(4444);
  int exact = 0;
  double general_worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const Topology topo = k % 3 == 0 ? Topology::Box : Topology::Torus;
    GridSpec g;
    if (k % 2 == 0) {
      g = build_grid(1, {5 + static_cast<int>(rng.next() % 20)}, 4, topo);
    } else {
      g = build_grid(2, {1 + static_cast<int>(rng.next() % 2), 1 + static_cast<int>(rng.next() % 2)}, 4, topo);
    }
    if (g.node_count() > 100) g = build_grid(2, {2, 2}, 4, Topology::Torus);

    // w = (k/8)^2 with a = 1 and h = 1/4: every edge cost is a short dyadic rational, so path
    // sums are exact in any order and Dijkstra must reproduce Floyd-Warshall bit for bit.
    Eigen::VectorXd W(g.node_count());
    for (Index i = 0; i < W.size(); ++i) {
      const double q = static_cast<double>(rng.next() % 9) / 8.0;
      W[i] = q * q;
    }
    const AgmonGraph dyadic(g, agmon_weight(W, 0.0));
    const Eigen::MatrixXd D = testing::floyd_warshall(dyadic);
    bool same = true;
    for (Index s = 0; s < g.node_count(); ++s) {
      const DistanceField d = distance_to_set(dyadic, IndexSet::from_sorted({s}));
      for (Index i = 0; i < g.node_count(); ++i) same = same && d.h[i] == D(s, i);
    }
    if (same) ++exact;

    auto c = std::make_shared<CoefficientField>(testing::random_field(g, rng, 4.0, true));
    AgmonWeight general;
    general.w = testing::random_vector(rng, g.node_count()).cwiseAbs();
    general.coeffs = c;
    const AgmonGraph graph(g, general);
    const Eigen::MatrixXd G = testing::floyd_warshall(graph);
    for (Index s = 0; s < g.node_count(); ++s) {
      const DistanceField d = distance_to_set(graph, IndexSet::from_sorted({s}));
      for (Index i = 0; i < g.node_count(); ++i) {
        if (G(s, i) > 0.0) general_worst = std::max(general_worst, std::abs(d.h[i] - G(s, i)) / G(s, i));
      }
    }
  }
  Outcome o;
  o.pass = exact == 10 && general_worst <= 1e-14;
  o.summary = std::to_string(exact) + "/10 grids identical to Floyd-Warshall on dyadic costs; general weights max rel. " +
              fmt(general_worst);
  return o;
}

// ----------------------------------------------------------------------------- criterion 5

struct Dirs {
  fs::path root;
  fs::path dir(const std::string& run, int criterion) const {
    return root / run / ("criterion" + std::to_string(criterion));
  }
};

std::string echo(const json& j) { return j.dump(); }

Outcome criterion5(const fs::path& out) {
  const int T = 256;
  const double V_bar = 4.0, delta = 1.0 / T, alpha = 0.5;
  int checks = 0, passed = 0, global_checks = 0;
  double worst_log_ratio = -std::numeric_limits<double>::infinity();
  std::vector<CheckReport> all;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance inst = gen_uniform_1d(seed, T, V_bar, 4);
    const DiscreteOperator op = assemble(inst.grid, inst.coeffs);
    const Landscape land = solve_landscape(op);
    const EigenSet eig = eig_smallest(op, 2);
    // psi_1 at mu_bar = lambda_1; psi_2 needs mu_bar >= lambda_2.
    for (std::size_t level = 0; level < 2; ++level) {
      const double mu_bar = eig.values[level];
      std::vector<CheckReport> reps;
      for (std::size_t j = 0; j <= level; ++j) {
        if (j != level) continue;
        for (auto& r : verify_decay(op, land, eig.vectors.col(Index(j)), eig.values[j], mu_bar, delta, alpha)) {
          r.params["seed"] = double(seed);
          r.params["global_index"] = double(j + 1);
          reps.push_back(std::move(r));
          ++global_checks;
        }
      }
      const WellPartition part = build_partition(inst.grid, land, inst.coeffs, mu_bar, delta);
      const LocalizedEigenSet loc = eig_localized(op, part, 1, mu_bar);
      for (std::size_t f = 0; f < loc.flat.size(); ++f) {
        if (loc.flat[f].value > mu_bar) continue;
        const IndexSet& omega = loc.omegas[std::size_t(loc.flat[f].cluster)];
        for (auto& r : verify_decay(op, land, loc.zero_extended(f), loc.flat[f].value, mu_bar, delta, alpha, omega)) {
          r.params["seed"] = double(seed);
          r.params["cluster"] = loc.flat[f].cluster;
          reps.push_back(std::move(r));
        }
      }
      for (auto& r : reps) {
        r.params["level"] = double(level + 1);
        ++checks;
        if (r.pass && !r.skipped) ++passed;
        if (r.name == "decay") worst_log_ratio = std::max(worst_log_ratio, r.params["log_lhs"] - r.params["log_rhs"]);
        all.push_back(std::move(r));
      }
    }
  }
  const double coeff = decay_constant(0.5, 4.0, 0.005);
  json cfg = {{"criterion", 5}, {"T", T}, {"p", 4}, {"V_bar", V_bar}, {"delta", delta}, {"alpha", alpha},
              {"seeds", "1..20"}, {"mu_bar", "lambda1 for psi1 and its wells; lambda2 for psi2 and its wells"}};
  write_reports_json(out / "decay_checks.json", all, echo(cfg));
  Outcome o;
  const bool coeff_ok = std::abs(coeff - 1.566e5) <= 0.0005e5;
  o.pass = passed == checks && global_checks == 80 && coeff_ok;
  o.summary = std::to_string(passed) + "/" + std::to_string(checks) +
              " decay checks pass with slack 2 (psi1, psi2 and localized pairs over 20 seeds), worst log(lhs/rhs) " +
              fmt(worst_log_ratio) + "; 18e(V/d)V at V=4, d=0.005 = " + fmt(coeff, 7);
  return o;
}

// ----------------------------------------------------------------------------- criteria 6, 7

struct ProjectionRun {
  Instance inst;
  double mu_bar = 0.0;
  double delta = 0.0;
  WellPartition part;
  EigenSet global;
  LocalizedEigenSet loc;
};

// Smallest separation for which the counting precondition admits N_bar >= n; wells closer than
// this are merged so the projection and counting bounds say something at this resolution.
double separating_threshold(double V_bar, double delta, double n) {
  return 2.0 * (std::log(300.0) + 3.0 * std::log(V_bar / delta) + std::log(n));
}

ProjectionRun projection_instance(std::uint64_t seed, int T, int mu_index, bool merge) {
  ProjectionRun run;
  run.inst = gen_uniform_1d(seed, T, 4.0, 4);
  run.delta = 1.0 / T;
  const DiscreteOperator op = assemble(run.inst.grid, run.inst.coeffs);
  const Landscape land = solve_landscape(op);
  const EigenSet lead = eig_smallest(op, mu_index);
  run.mu_bar = lead.values[std::size_t(mu_index - 1)] + run.delta;
  PartitionOptions options;
  if (merge) options.merge_threshold = separating_threshold(4.0, run.delta, 5.0);
  run.part = build_partition(run.inst.grid, land, run.inst.coeffs, run.mu_bar, run.delta, options);
  // Both bases complete through mu_bar + delta so every window (lambda - delta, lambda + delta)
  // with lambda <= mu_bar is covered.
  run.global = eig_below(op, run.mu_bar + run.delta, mu_index);
  run.loc = eig_localized(op, run.part, 1, run.mu_bar + run.delta);
  return run;
}

std::vector<double> at_most(const std::vector<double>& v, double level) {
  std::vector<double> out;
  for (double x : v) {
    if (x <= level) out.push_back(x);
  }
  return out;
}

struct ProjectionTally {
  int gated = 0, gated_pass = 0, vacuous = 0, skipped = 0, degenerate = 0, total = 0;
};

ProjectionTally tally(const std::vector<CheckReport>& reps) {
  ProjectionTally t;
  for (const auto& r : reps) {
    ++t.total;
    if (r.skipped) {
      ++t.skipped;
      continue;
    }
    if (r.vacuous) ++t.vacuous;
    if (r.degenerate) ++t.degenerate;
    if (r.vacuous || r.degenerate) continue;
    ++t.gated;
    if (r.pass) ++t.gated_pass;
  }
  return t;
}

std::vector<CheckReport> tagged(std::vector<CheckReport> reps, const std::string& partition) {
  for (auto& r : reps) r.notes += (r.notes.empty() ? "partition " : "; partition ") + partition;
  return reps;
}

Outcome criterion6(const fs::path& out) {
  const int T = 1 << 13;
  const ProjectionRun run = projection_instance(1, T, 2, true);
  const ProjectionRun plain = projection_instance(1, T, 2, false);
  auto reps = tagged(verify_projection(run.global, run.loc, run.delta, run.part.S_bar, 4.0, run.mu_bar), "merged");
  const ProjectionTally t = tally(reps);
  const auto plain_reps =
      tagged(verify_projection(plain.global, plain.loc, plain.delta, plain.part.S_bar, 4.0, plain.mu_bar), "default");
  const ProjectionTally pt = tally(plain_reps);

  const DiscreteOperator op = assemble(run.inst.grid, run.inst.coeffs);
  const Landscape land = solve_landscape(op);
  int cut_pass = 0, cut_total = 0;
  for (std::size_t f = 0; f < run.loc.flat.size(); ++f) {
    if (run.loc.flat[f].value > run.mu_bar) continue;
    CheckReport c = cutoff_residual_bound(op, land, run.loc, f, run.part);
    c.notes += c.notes.empty() ? "informational" : "; informational";
    ++cut_total;
    if (c.pass) ++cut_pass;
    reps.push_back(std::move(c));
  }
  reps.insert(reps.end(), plain_reps.begin(), plain_reps.end());

  const double T15 = std::pow(2.0, 15);
  const double log_b = log_projection_bound(4.0, 1.0 / T15, 0.69 * std::pow(T15, 0.59));
  json cfg = {{"criterion", 6}, {"seed", 1}, {"T", T}, {"p", 4}, {"V_bar", 4.0}, {"delta", run.delta},
              {"mu_bar", "lambda2+delta"}, {"merge_threshold", run.part.merge_threshold},
              {"S_bar", run.part.S_bar}, {"clusters", run.part.clusters.size()},
              {"default_S_bar", plain.part.S_bar}, {"default_clusters", plain.part.clusters.size()}};
  write_reports_json(out / "projection_checks.json", reps, echo(cfg));
  Outcome o;
  o.pass = t.gated > 0 && t.gated_pass == t.gated && t.skipped == 0 && log_b < std::log(1e-50);
  o.summary = std::to_string(t.gated_pass) + "/" + std::to_string(t.gated) + " non-vacuous checks pass (" +
              std::to_string(t.total) + " projections, " + std::to_string(t.vacuous) + " vacuous, " +
              std::to_string(t.degenerate) + " degenerate, " + std::to_string(t.skipped) + " skipped; S_bar " +
              fmt(run.part.S_bar) + " over " + std::to_string(run.part.clusters.size()) +
              " merged wells); cutoff residual " + std::to_string(cut_pass) + "/" + std::to_string(cut_total) +
              " (informational); unmerged partition: S_bar " + fmt(plain.part.S_bar) + ", " +
              std::to_string(pt.vacuous) + "/" + std::to_string(pt.total) + " vacuous, " +
              std::to_string(pt.gated_pass) + "/" + std::to_string(pt.gated) +
              " pass; bound at T=2^15: 10^" + fmt(log_b / std::log(10.0));
  return o;
}

Outcome criterion7(const fs::path& out) {
  const ProjectionRun six = projection_instance(1, 1 << 13, 2, true);
  const CheckReport theorem = verify_counting(at_most(six.global.values, six.mu_bar),
                                              at_most(six.loc.values(), six.mu_bar), six.delta, six.mu_bar,
                                              4.0, six.part.S_bar);
  std::vector<CheckReport> reps{theorem};
  int seeds_ok = 0, plain_ok = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    for (bool merge : {true, false}) {
      const ProjectionRun run = projection_instance(seed, 4096, 5, merge);
      CheckReport e = empirical_interlacing(run.global.values, run.loc.values(), run.delta, 5);
      e.params["seed"] = double(seed);
      e.params["S_bar"] = run.part.S_bar;
      e.notes += merge ? "; partition merged" : "; partition default";
      if (e.pass) ++(merge ? seeds_ok : plain_ok);
      reps.push_back(std::move(e));
    }
  }
  json cfg = {{"criterion", 7}, {"theorem_form", "criterion 6 instance"}, {"empirical_T", 4096},
              {"seeds", "1..20"}, {"mu_bar", "lambda5+delta"}, {"delta", "1/T"},
              {"merge_threshold", "2 (log 300 + 3 log(V_bar/delta) + log 5)"}};
  write_reports_json(out / "counting_checks.json", reps, echo(cfg));
  Outcome o;
  o.pass = theorem.pass && !theorem.vacuous && seeds_ok >= 18;
  o.summary = std::string("theorem form ") + (theorem.pass ? "holds" : "fails") + " with N_bar = " +
              fmt(theorem.params.at("N_bar")) + " on the T=2^13 instance; empirical interlacing on " +
              std::to_string(seeds_ok) + "/20 seeds at T=4096 (need 18); unmerged partition: " +
              std::to_string(plain_ok) + "/20";
  return o;
}

// ----------------------------------------------------------------------------- criterion 8

Outcome criterion8(const fs::path& out) {
  EnsembleConfig cfg;
  cfg.Ts = {128, 256, 512, 1024, 2048};
  cfg.realizations = 200;
  cfg.base_seed = 1;
  cfg.threads = 1;
  auto t0 = Clock::now();
  const auto serial = run_ensemble(cfg);
  const double serial_s = seconds_since(t0);
  cfg.threads = 4;
  t0 = Clock::now();
  const auto parallel = run_ensemble(cfg);
  const double parallel_s = seconds_since(t0);

  bool same = serial.size() == parallel.size();
  for (std::size_t i = 0; same && i < serial.size(); ++i) {
    same = serial[i].seed == parallel[i].seed && serial[i].T == parallel[i].T &&
           format_double(serial[i].lambda1) == format_double(parallel[i].lambda1) &&
           format_double(serial[i].S_min) == format_double(parallel[i].S_min);
  }
  const EnsembleSummary s = aggregate(serial);
  json echo_cfg = {{"criterion", 8}, {"T", cfg.Ts}, {"realizations", cfg.realizations},
                   {"base_seed", cfg.base_seed}, {"V_bar", cfg.V_bar}, {"p", cfg.p}, {"delta", "1/T"}};
  write_records_csv(out / "records.csv", s.records);
  write_summary_json(out / "summary.json", s, echo(echo_cfg));

  bool gaps = true;
  double min_gap_fraction = 1.0;
  std::size_t failures = 0;
  for (const auto& pt : s.per_T) {
    gaps = gaps && pt.gap_fraction >= 0.5;
    min_gap_fraction = std::min(min_gap_fraction, pt.gap_fraction);
    failures += pt.failures;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  Outcome o;
  o.pass = s.fit_available && s.exponent >= 0.45 && s.exponent <= 0.73 && gaps && failures == 0 && same &&
           serial_s < 900.0 && parallel_s < 300.0;
  o.summary = "median S = " + fmt(s.prefactor) + " T^" + fmt(s.exponent) + " (exponent band [0.45, 0.73]); gap > 1/T in >= " +
              fmt(min_gap_fraction, 3) + " of realizations at every T; " + std::to_string(failures) + " failures; " +
              fmt(serial_s, 3) + " s with 1 worker, " + fmt(parallel_s, 3) + " s with 4 workers on " +
              std::to_string(hw) + " hardware thread(s); records " + (same ? "identical" : "DIFFER") +
              " across worker counts";
  return o;
}

// ----------------------------------------------------------------------------- criterion 9

Outcome criterion9(const fs::path& out) {
  int total_localized = 0, total_basin = 0;
  double worst_time = 0.0;
  std::string per_seed;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Demo2DConfig cfg;
    cfg.seed = seed;
    const auto t0 = Clock::now();
    const Demo2DResult r = run_demo2d(cfg);
    const double secs = seconds_since(t0);
    worst_time = std::max(worst_time, secs);
    int basin = 0;
    for (const auto& m : r.masses) {
      if (m.basin_fraction >= cfg.mass_threshold) ++basin;
    }
    total_localized += r.localized_count;
    total_basin += basin;
    per_seed += (per_seed.empty() ? "" : ",") + std::to_string(r.localized_count);
    json echo_cfg = {{"criterion", 9}, {"seed", seed}, {"T", cfg.T}, {"p", cfg.p}, {"prob", cfg.prob},
                     {"v_high", cfg.v_high}, {"eigen_count", cfg.eigen_count}, {"target", cfg.target},
                     {"delta", "mean_spacing"}};
    const fs::path dir = out / ("seed" + std::to_string(seed));
    write_masses_csv(dir / "masses.csv", r.masses);
    write_eigenvalues_csv(dir / "eigenvalues.csv", std::vector<const EigenSet*>{&r.eigen});
    write_partition_json(dir / "partition.json", r.partition, echo(echo_cfg));
    write_demo_summary_json(dir / "summary.json", r, echo(echo_cfg));
  }
  const double mean = total_localized / 5.0;
  Outcome o;
  o.pass = mean >= 5.0 && worst_time < 600.0;
  o.summary = "mean " + fmt(mean, 3) + " of the first 20 eigenvectors hold >= 90% of their mass in one component of E(lambda_j + delta) (need 5; per seed " +
              per_seed + "); diagnostic: mean " + fmt(total_basin / 5.0, 3) +
              " in one Agmon basin; slowest seed " + fmt(worst_time, 3) + " s (< 600 s)";
  return o;
}

// ----------------------------------------------------------------------------- criterion 10

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  if (!fs::exists(dir)) return files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) files[fs::relative(e.path(), dir).string()] = read_text_file(e.path());
  }
  return files;
}

const std::map<int, std::function<Outcome(const fs::path&)>>& output_criteria() {
  static const std::map<int, std::function<Outcome(const fs::path&)>> table{
      {5, criterion5}, {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9}};
  return table;
}

Outcome criterion10(const Dirs& dirs) {
  std::size_t files = 0;
  std::vector<std::string> differing;
  for (const auto& [n, fn] : output_criteria()) {
    const fs::path first = dirs.dir("run1", n);
    if (snapshot(first).empty()) fn(first);
    const fs::path second = dirs.dir("run2", n);
    fs::remove_all(second);
    fn(second);
    const auto a = snapshot(first);
    const auto b = snapshot(second);
    std::set<std::string> names;
    for (const auto& [k, v] : a) names.insert(k);
    for (const auto& [k, v] : b) names.insert(k);
    for (const auto& name : names) {
      ++files;
      const auto ia = a.find(name);
      const auto ib = b.find(name);
      if (ia == a.end() || ib == b.end() || ia->second != ib->second) {
        differing.push_back("criterion" + std::to_string(n) + "/" + name);
      }
    }
  }
  Outcome o;
  o.pass = differing.empty() && files > 0;
  o.summary = std::to_string(files - differing.size()) + "/" + std::to_string(files) +
              " output files of criteria 5-9 bit-identical on rerun";
  for (const auto& d : differing) o.summary += "; differs: " + d;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  Dirs dirs{fs::path("acceptance_out")};
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only.insert(std::stoi(argv[++i]));
    } else if (arg == "--out" && i + 1 < argc) {
      dirs.root = argv[++i];
    } else {
      std::cerr << "usage: effpot_acceptance [--only N]... [--out DIR]\n";
      return 2;
    }
  }

  const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, criterion1},
      {2, criterion2},
      {3, criterion3},
      {4, criterion4},
      {5, [&] { return criterion5(dirs.dir("run1", 5)); }},
      {6, [&] { return criterion6(dirs.dir("run1", 6)); }},
      {7, [&] { return criterion7(dirs.dir("run1", 7)); }},
      {8, [&] { return criterion8(dirs.dir("run1", 8)); }},
      {9, [&] { return criterion9(dirs.dir("run1", 9)); }},
      {10, [&] { return criterion10(dirs); }},
  };

  int failed = 0;
  for (const auto& [n, fn] : criteria) {
    if (!only.empty() && !only.count(n)) continue;
    if (n >= 5 && n <= 9) fs::remove_all(dirs.dir("run1", n));
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.summary = std::string("error: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.summary << "  ["
              << fmt(seconds_since(t0), 3) << " s]" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
