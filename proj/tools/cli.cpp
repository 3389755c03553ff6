#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <regex>
#include <set>

#include <nlohmann/json.hpp>

#include "effpot/errors.hpp"
#include "effpot/io.hpp"
#include "effpot/landscape.hpp"
#include "effpot/prng.hpp"
#include "effpot/verify.hpp"
#include "effpot/wells.hpp"

namespace effpot::cli {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::ConfigParse, msg); }

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) bad(where + " must be an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : obj.items()) {
    if (!ok.count(k)) bad("unknown key '" + k + "' in " + where);
  }
}

template <typename T>
void read(const json& obj, const char* key, T& dst, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    dst = obj.at(key).get<T>();
  } catch (const json::exception&) {
    bad(where + "." + key + " has the wrong type");
  }
}

void positive(double v, const std::string& what) {
  if (!(v > 0.0) || !std::isfinite(v)) bad(what + " must be positive");
}

LevelSpec parse_level(const json& v, const std::string& where) {
  LevelSpec s;
  if (v.is_number()) {
    s.from_eigen = false;
    s.value = v.get<double>();
    return s;
  }
  if (!v.is_string()) bad(where + " must be a number or a string like \"lambda5+delta\"");
  static const std::regex re(R"(^lambda([0-9]+)(\+([0-9]*\.?[0-9]*)delta)?$)");
  std::smatch m;
  const std::string str = v.get<std::string>();
  if (!std::regex_match(str, m, re)) bad(where + ": cannot parse '" + str + "'");
  s.eigen_index = std::stoi(m[1].str());
  if (s.eigen_index < 1) bad(where + ": eigenvalue indices start at 1");
  if (m[2].matched) s.delta_multiple = m[3].str().empty() ? 1.0 : std::stod(m[3].str());
  return s;
}

DeltaSpec parse_delta(const json& v, const std::string& where) {
  DeltaSpec d;
  if (v.is_number()) {
    d.kind = DeltaSpec::Kind::Number;
    d.value = v.get<double>();
    positive(d.value, where);
  } else if (v == "1/T") {
    d.kind = DeltaSpec::Kind::InverseT;
  } else if (v == "mean_spacing") {
    d.kind = DeltaSpec::Kind::MeanSpacing;
  } else {
    bad(where + " must be a number, \"1/T\" or \"mean_spacing\"");
  }
  return d;
}

EigenMethod parse_method(const std::string& s) {
  if (s == "auto") return EigenMethod::Auto;
  if (s == "krylov") return EigenMethod::Krylov;
  if (s == "dense") return EigenMethod::Dense;
  bad("solver.eigen_method must be auto, krylov or dense");
}

// ---------------------------------------------------------------- pipeline pieces

struct Problem {
  Instance inst;
  DiscreteOperator op;
  Landscape land;
  int T = 0;
};

Problem build_problem(const RunConfig& c) {
  Problem pr;
  const CoefficientConfig& cc = c.coefficients;
  if (cc.source == "generator") {
    if (cc.generator == "uniform_1d") {
      pr.inst = gen_uniform_1d(cc.seed, cc.T, cc.V_bar, cc.p);
    } else {
      pr.inst = gen_bernoulli_2d(cc.seed, cc.T, cc.v_high, cc.prob, cc.p);
    }
    pr.T = cc.T;
  } else {
    const GridConfig& g = *c.grid;
    const GridSpec grid = build_grid(g.dim, g.extent, g.cells_per_unit, g.topology);
    auto coeffs = std::make_shared<CoefficientField>(
        cc.source == "file" ? load_coefficients_csv(cc.path, grid, cc.V_bar)
                            : constant_coefficients(grid, cc.value));
    if (cc.source == "constant" && cc.V_bar > cc.value) coeffs->v_bar = cc.V_bar;
    validate_coefficients(grid, *coeffs);
    pr.inst = {grid, coeffs};
    pr.T = g.extent.front();
  }
  pr.op = assemble(pr.inst.grid, pr.inst.coeffs);
  pr.land = solve_landscape(pr.op, c.landscape_tol);
  return pr;
}

struct Levels {
  double mu_bar = 0.0;
  double delta = 0.0;
};

int eigen_demand(const RunConfig& c) {
  int k = 0;
  if (c.mu_bar.from_eigen) k = c.mu_bar.eigen_index;
  if (c.delta.kind == DeltaSpec::Kind::MeanSpacing) k = std::max(k, (c.mu_bar.from_eigen ? c.mu_bar.eigen_index : 1) + 4);
  return k;
}

Levels resolve_levels(const RunConfig& c, const Problem& pr, const EigenSet* eig) {
  Levels lv;
  const int target = c.mu_bar.from_eigen ? c.mu_bar.eigen_index : 1;
  switch (c.delta.kind) {
    case DeltaSpec::Kind::Number: lv.delta = c.delta.value; break;
    case DeltaSpec::Kind::InverseT: lv.delta = 1.0 / pr.T; break;
    case DeltaSpec::Kind::MeanSpacing: lv.delta = mean_level_spacing(eig->values, target, 4); break;
  }
  if (c.mu_bar.from_eigen) {
    if (!eig || static_cast<int>(eig->values.size()) < c.mu_bar.eigen_index) {
      throw Error(ErrorCode::KExceedsDof, "mu_bar refers to an eigenvalue that was not computed");
    }
    lv.mu_bar = eig->values[static_cast<std::size_t>(c.mu_bar.eigen_index - 1)] +
                c.mu_bar.delta_multiple * lv.delta;
  } else {
    lv.mu_bar = c.mu_bar.value;
  }
  return lv;
}

std::optional<EigenSet> leading_eigen(const RunConfig& c, const Problem& pr, int extra = 0) {
  const int k = std::max(eigen_demand(c), extra);
  if (k == 0) return std::nullopt;
  return eig_smallest(pr.op, static_cast<int>(std::min<Index>(k, pr.op.dof())), c.eigen);
}

WellPartition partition_for(const RunConfig& c, const Problem& pr, const Levels& lv) {
  PartitionOptions opt;
  opt.merge_threshold = c.merge_threshold;
  opt.stencil = c.stencil;
  return build_partition(pr.inst.grid, pr.land, pr.inst.coeffs, lv.mu_bar, lv.delta, opt);
}

void print_levels(std::ostream& log, const Levels& lv) {
  log << "mu_bar " << format_double(lv.mu_bar) << "  delta " << format_double(lv.delta) << '\n';
}

// ---------------------------------------------------------------- subcommands

void cmd_landscape(const RunConfig& c, std::ostream& log) {
  const Problem pr = build_problem(c);
  write_landscape_csv(c.out / "landscape.csv", pr.inst.grid, *pr.inst.coeffs, pr.land);
  const CheckReport floor = verify_landscape_floor(pr.land, pr.inst.coeffs->v_bar);
  json j;
  j["nodes"] = pr.inst.grid.node_count();
  j["residual"] = pr.land.residual;
  j["solver"] = pr.land.solver;
  j["min_u"] = pr.land.u.minCoeff();
  j["max_u"] = pr.land.u.maxCoeff();
  j["min_W"] = pr.land.W.minCoeff();
  j["floor"] = json::parse(reports_json({floor}))[0];
  j["config"] = json::parse(c.raw);
  write_text_file(c.out / "landscape.json", j.dump(2) + "\n");
  log << "landscape: " << pr.inst.grid.node_count() << " nodes, residual "
      << format_double(pr.land.residual) << ", min u " << format_double(pr.land.u.minCoeff()) << '\n';
  log << "check landscape_floor " << (floor.pass ? "PASS" : "FAIL") << '\n';
}

void cmd_eigs(const RunConfig& c, std::ostream& log) {
  const Problem pr = build_problem(c);
  const EigenSet global = eig_smallest(
      pr.op, static_cast<int>(std::min<Index>(std::max(c.eig_count, eigen_demand(c)), pr.op.dof())), c.eigen);
  std::vector<const EigenSet*> sets{&global};
  std::optional<LocalizedEigenSet> loc;
  if (c.localized) {
    const Levels lv = resolve_levels(c, pr, &global);
    print_levels(log, lv);
    const WellPartition part = partition_for(c, pr, lv);
    loc = eig_localized(pr.op, part, c.k_per_well, lv.mu_bar, c.eigen);
    for (const auto& w : loc->wells) sets.push_back(&w);
  }
  write_eigenvalues_csv(c.out / "eigenvalues.csv", sets);
  if (c.write_vectors) write_eigenvectors_csv(c.out / "eigenvectors.csv", pr.inst.grid, global);
  log << "eigs: " << global.size() << " global pairs via " << global.method;
  if (loc) log << ", " << loc->flat.size() << " localized pairs in " << loc->wells.size() << " wells";
  log << '\n';
  for (std::size_t i = 0; i < global.size(); ++i) {
    log << "  lambda" << i + 1 << " = " << format_double(global.values[i]) << '\n';
  }
}

void cmd_wells(const RunConfig& c, std::ostream& log) {
  const Problem pr = build_problem(c);
  const auto eig = leading_eigen(c, pr);
  const Levels lv = resolve_levels(c, pr, eig ? &*eig : nullptr);
  print_levels(log, lv);
  const WellPartition part = partition_for(c, pr, lv);
  check_partition_invariants(pr.inst.grid, pr.land, pr.inst.coeffs, part);
  write_partition_csv(c.out / "partition.csv", pr.inst.grid, pr.land, part);
  write_partition_json(c.out / "partition.json", part, c.raw);
  log << "wells: " << part.components.size() << " components, " << part.clusters.size()
      << " clusters, S_bar " << format_double(part.S_bar) << '\n';
}

void cmd_agmon(const RunConfig& c, std::ostream& log) {
  const Problem pr = build_problem(c);
  const auto eig = leading_eigen(c, pr);
  const Levels lv = resolve_levels(c, pr, eig ? &*eig : nullptr);
  print_levels(log, lv);
  const IndexSet E = sublevel_set(pr.land, lv.mu_bar + lv.delta);
  const AgmonGraph graph(pr.inst.grid, agmon_weight(pr.land, lv.mu_bar, pr.inst.coeffs), c.stencil);
  const DistanceField field = distance_to_set(graph, E, "E(mu_bar+delta)");
  write_distance_csv(c.out / "distance.csv", pr.inst.grid, field);
  json j;
  j["mu_bar"] = lv.mu_bar;
  j["delta"] = lv.delta;
  j["sources"] = E.size();
  j["h_max"] = field.h.maxCoeff();
  j["lipschitz_excess"] = max_lipschitz_excess(graph, field.h);
  j["stencil"] = std::string(stencil_name(c.stencil));
  j["config"] = json::parse(c.raw);
  write_text_file(c.out / "agmon.json", j.dump(2) + "\n");
  log << "agmon: " << E.size() << " source nodes, max distance " << format_double(field.h.maxCoeff())
      << '\n';
}

std::vector<CheckReport> verify_all(const RunConfig& c, const Problem& pr, std::ostream& log,
                                    EigenSet& global_out, LocalizedEigenSet& loc_out) {
  std::vector<CheckReport> reports;
  const DiscreteOperator& op = pr.op;
  const double V_bar = pr.inst.coeffs->v_bar;
  reports.push_back(verify_landscape_floor(pr.land, V_bar));

  Rng rng(c.eigen.seed ^ 0xf00dULL);
  std::vector<Eigen::VectorXd> tests{pr.land.u, Eigen::VectorXd::Ones(op.dof())};
  for (int t = 0; t < c.identity_tests; ++t) {
    Eigen::VectorXd f(op.dof());
    for (Index i = 0; i < f.size(); ++i) f[i] = rng.uniform() - 0.5;
    tests.push_back(f);
  }
  for (const auto& f : tests) {
    reports.push_back(verify_identity(op, pr.land, f));
    reports.push_back(verify_form_bound(op, pr.land, f));
  }

  const auto lead = leading_eigen(c, pr, 1);
  const Levels lv = resolve_levels(c, pr, &*lead);
  print_levels(log, lv);
  const EigenSet global = eig_below(op, lv.mu_bar, std::max(c.eig_count, 1), c.eigen);
  const auto at_or_below = [&](double v) { return v <= lv.mu_bar + 1e-12 * std::max(1.0, lv.mu_bar); };
  reports.push_back(verify_form_bound(op, pr.land, global.vectors.col(0)));
  for (std::size_t i = 0; i < global.size(); ++i) {
    const Eigen::VectorXd psi = global.vectors.col(static_cast<Index>(i));
    reports.push_back(verify_eigen_identity(op, pr.land, psi, Eigen::VectorXd::Ones(op.dof()),
                                            global.values[i]));
    if (at_or_below(global.values[i])) {
      for (auto& r : verify_decay(op, pr.land, psi, global.values[i], lv.mu_bar, lv.delta, c.alpha)) {
        reports.push_back(std::move(r));
      }
    }
  }

  const WellPartition part = partition_for(c, pr, lv);
  const LocalizedEigenSet loc = eig_localized(op, part, c.k_per_well, lv.mu_bar, c.eigen);
  const IndexSet E = sublevel_set(pr.land, lv.mu_bar + lv.delta);
  for (std::size_t f = 0; f < loc.flat.size(); ++f) {
    const LocalizedPair& pair = loc.flat[f];
    const IndexSet& omega = loc.omegas[static_cast<std::size_t>(pair.cluster)];
    const Eigen::VectorXd phi = loc.zero_extended(f);
    // g = chi e^(alpha h) with h the Agmon distance (weight w_mu) to the well inside Omega.
    std::vector<Index> src;
    const auto in = omega.mask(op.dof());
    for (Index i : E) {
      if (in[static_cast<std::size_t>(i)]) src.push_back(i);
    }
    if (!src.empty()) {
      const DistanceField h = distance_to_set(
          pr.inst.grid, agmon_weight(pr.land, pair.value, pr.inst.coeffs), IndexSet::from_sorted(src));
      Eigen::VectorXd g(op.dof());
      for (Index i = 0; i < op.dof(); ++i) {
        const double hi = std::min(h.h[i], 600.0 / c.alpha);
        g[i] = std::min(hi, 1.0) * std::exp(c.alpha * hi);
      }
      CheckReport r = verify_eigen_identity(op, pr.land, phi, g, pair.value, omega);
      r.params["cluster"] = pair.cluster;
      reports.push_back(std::move(r));
    }
    if (at_or_below(pair.value)) {
      for (auto& r : verify_decay(op, pr.land, phi, pair.value, lv.mu_bar, lv.delta, c.alpha, omega)) {
        r.params["cluster"] = pair.cluster;
        reports.push_back(std::move(r));
      }
      reports.push_back(cutoff_residual_bound(op, pr.land, loc, f, part));
    }
  }
  for (auto& r : verify_projection(global, loc, lv.delta, part.S_bar, V_bar, lv.mu_bar)) {
    reports.push_back(std::move(r));
  }
  std::vector<double> gv;
  for (double v : global.values) {
    if (at_or_below(v)) gv.push_back(v);
  }
  std::vector<double> lvv;
  for (double v : loc.values()) {
    if (at_or_below(v)) lvv.push_back(v);
  }
  reports.push_back(verify_counting(gv, lvv, lv.delta, lv.mu_bar, V_bar, part.S_bar));
  reports.push_back(empirical_interlacing(gv, lvv, lv.delta, 5));
  global_out = global;
  loc_out = loc;
  return reports;
}

void cmd_verify(const RunConfig& c, std::ostream& log) {
  const Problem pr = build_problem(c);
  EigenSet global;
  LocalizedEigenSet loc;
  const std::vector<CheckReport> reports = verify_all(c, pr, log, global, loc);
  write_reports_json(c.out / "checks.json", reports, c.raw);
  write_eigenvalues_csv(c.out / "eigenvalues.csv", global, loc);
  std::map<std::string, std::array<int, 3>> tally;
  for (const auto& r : reports) {
    auto& t = tally[r.name];
    if (r.skipped) ++t[2];
    else if (r.pass) ++t[0];
    else ++t[1];
  }
  for (const auto& [name, t] : tally) {
    log << "check " << name << ": " << t[0] << " passed, " << t[1] << " failed, " << t[2]
        << " skipped\n";
  }
}

void cmd_realization(const RunConfig& c, std::ostream& log) {
  RealizationConfig rc = c.realization;
  rc.eigen = c.eigen;
  const RealizationRecord rec = run_realization(rc);
  write_records_csv(c.out / "records.csv", {rec});
  if (!rec.ok()) throw Error(ErrorCode::NoConvergence, "realization failed with " + rec.error_tag);
  log << "realization seed " << rec.seed << " T " << rec.T << ": lambda1 "
      << format_double(rec.lambda1) << ", gap " << format_double(rec.gap) << ", components "
      << rec.component_count << ", S_min " << format_double(rec.S_min) << '\n';
}

void cmd_ensemble(const RunConfig& c, std::ostream& log) {
  EnsembleConfig ec = c.ensemble;
  ec.eigen = c.eigen;
  const auto records = run_ensemble(ec);
  const EnsembleSummary s = aggregate(records, ec.Ts.size() >= 3);
  write_records_csv(c.out / "records.csv", s.records);
  write_summary_json(c.out / "summary.json", s, c.raw);
  for (const auto& pt : s.per_T) {
    log << "T " << pt.T << ": median S " << format_double(pt.median_S) << ", gap > 1/T fraction "
        << format_double(pt.gap_fraction) << ", failures " << pt.failures << '\n';
  }
  if (s.fit_available) {
    log << "fit: median S = " << format_double(s.prefactor) << " * T^" << format_double(s.exponent)
        << '\n';
  }
}

void cmd_demo2d(const RunConfig& c, std::ostream& log) {
  Demo2DConfig dc = c.demo;
  dc.eigen = c.eigen;
  const Demo2DResult r = run_demo2d(dc);
  write_landscape_csv(c.out / "landscape.csv", r.instance.grid, *r.instance.coeffs, r.landscape);
  write_partition_csv(c.out / "partition.csv", r.instance.grid, r.landscape, r.partition);
  write_partition_json(c.out / "partition.json", r.partition, c.raw);
  write_eigenvalues_csv(c.out / "eigenvalues.csv", std::vector<const EigenSet*>{&r.eigen});
  write_eigenvectors_csv(c.out / "eigenvectors.csv", r.instance.grid, r.eigen);
  write_masses_csv(c.out / "masses.csv", r.masses);
  write_demo_summary_json(c.out / "summary.json", r, c.raw);
  log << "demo2d seed " << r.seed_used << ": mu_bar " << format_double(r.mu_bar) << ", delta "
      << format_double(r.delta) << ", " << r.partition.components.size() << " components\n";
  log << "eigenvectors with >= " << dc.mass_threshold << " of their mass in one cluster: "
      << r.localized_count << " of " << r.masses.size() << '\n';
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
  check_keys(root, {"grid", "coefficients", "solver", "wells", "eigs", "verify", "realization",
                    "ensemble", "demo2d", "output"},
             "config");
  RunConfig c;
  c.raw = root.dump();

  if (root.contains("grid")) {
    const json& g = root["grid"];
    check_keys(g, {"dim", "extent", "cells_per_unit", "topology"}, "grid");
    GridConfig gc;
    read(g, "dim", gc.dim, "grid");
    read(g, "extent", gc.extent, "grid");
    read(g, "cells_per_unit", gc.cells_per_unit, "grid");
    if (g.contains("topology")) {
      try {
        gc.topology = parse_topology(g["topology"].get<std::string>());
      } catch (const std::exception&) {
        bad("grid.topology must be \"torus\" or \"box\"");
      }
    }
    if (gc.dim < 1 || gc.dim > 2) bad("grid.dim must be 1 or 2");
    if (static_cast<int>(gc.extent.size()) != gc.dim) bad("grid.extent needs one entry per axis");
    for (int e : gc.extent) {
      if (e < 1) bad("grid.extent entries must be positive");
    }
    if (gc.cells_per_unit < 1) bad("grid.cells_per_unit must be positive");
    c.grid = gc;
  }

  if (root.contains("coefficients")) {
    const json& k = root["coefficients"];
    check_keys(k, {"source", "generator", "seed", "T", "p", "V_bar", "v_high", "prob", "value", "path"},
               "coefficients");
    CoefficientConfig& cc = c.coefficients;
    read(k, "source", cc.source, "coefficients");
    read(k, "generator", cc.generator, "coefficients");
    read(k, "seed", cc.seed, "coefficients");
    read(k, "T", cc.T, "coefficients");
    read(k, "p", cc.p, "coefficients");
    read(k, "V_bar", cc.V_bar, "coefficients");
    read(k, "v_high", cc.v_high, "coefficients");
    read(k, "prob", cc.prob, "coefficients");
    read(k, "value", cc.value, "coefficients");
    read(k, "path", cc.path, "coefficients");
  }
  const CoefficientConfig& cc = c.coefficients;
  if (cc.source == "generator") {
    if (cc.generator != "uniform_1d" && cc.generator != "bernoulli_2d") {
      bad("coefficients.generator must be uniform_1d or bernoulli_2d");
    }
    if (cc.T < 2) bad("coefficients.T must be at least 2");
    if (cc.p < 1) bad("coefficients.p must be positive");
    if (cc.generator == "bernoulli_2d" && !(cc.prob > 0.0 && cc.prob < 1.0)) {
      bad("coefficients.prob must lie in (0, 1)");
    }
  } else if (cc.source == "file" || cc.source == "constant") {
    if (!c.grid) bad("coefficients.source '" + cc.source + "' needs a grid section");
    if (cc.source == "file" && cc.path.empty()) bad("coefficients.path is required for file input");
    if (cc.source == "constant" && !(cc.value >= 0.0)) bad("coefficients.value must be >= 0");
  } else {
    bad("coefficients.source must be generator, file or constant");
  }

  if (root.contains("solver")) {
    const json& s = root["solver"];
    check_keys(s, {"landscape_tol", "eigen_tol", "eigen_seed", "eigen_method", "block_size",
                   "dense_max_dof"},
               "solver");
    read(s, "landscape_tol", c.landscape_tol, "solver");
    read(s, "eigen_tol", c.eigen.tol, "solver");
    read(s, "eigen_seed", c.eigen.seed, "solver");
    read(s, "block_size", c.eigen.block_size, "solver");
    read(s, "dense_max_dof", c.eigen.dense_max_dof, "solver");
    if (s.contains("eigen_method")) {
      std::string m;
      read(s, "eigen_method", m, "solver");
      c.eigen.method = parse_method(m);
    }
    positive(c.landscape_tol, "solver.landscape_tol");
    positive(c.eigen.tol, "solver.eigen_tol");
    if (c.eigen.block_size < 1) bad("solver.block_size must be positive");
  }

  if (root.contains("wells")) {
    const json& w = root["wells"];
    check_keys(w, {"mu_bar", "delta", "alpha", "merge_threshold", "stencil"}, "wells");
    if (w.contains("mu_bar")) c.mu_bar = parse_level(w["mu_bar"], "wells.mu_bar");
    if (w.contains("delta")) c.delta = parse_delta(w["delta"], "wells.delta");
    read(w, "alpha", c.alpha, "wells");
    read(w, "merge_threshold", c.merge_threshold, "wells");
    if (w.contains("stencil")) {
      try {
        c.stencil = parse_stencil(w["stencil"].get<std::string>());
      } catch (const std::exception&) {
        bad("wells.stencil must be \"axis\" or \"diagonal\"");
      }
    }
    if (!(c.alpha > 0.0 && c.alpha < 1.0)) bad("wells.alpha must lie in (0, 1)");
    if (!(c.merge_threshold >= 0.0)) bad("wells.merge_threshold must be >= 0");
  }

  if (root.contains("eigs")) {
    const json& e = root["eigs"];
    check_keys(e, {"count", "k_per_well", "localized", "write_vectors"}, "eigs");
    read(e, "count", c.eig_count, "eigs");
    read(e, "k_per_well", c.k_per_well, "eigs");
    read(e, "localized", c.localized, "eigs");
    read(e, "write_vectors", c.write_vectors, "eigs");
    if (c.eig_count < 1) bad("eigs.count must be positive");
    if (c.k_per_well < 0) bad("eigs.k_per_well must be >= 0");
  }

  if (root.contains("verify")) {
    const json& v = root["verify"];
    check_keys(v, {"identity_tests"}, "verify");
    read(v, "identity_tests", c.identity_tests, "verify");
    if (c.identity_tests < 0) bad("verify.identity_tests must be >= 0");
  }

  if (root.contains("realization")) {
    const json& r = root["realization"];
    check_keys(r, {"seed", "T", "V_bar", "p", "delta", "timing"}, "realization");
    RealizationConfig& rc = c.realization;
    read(r, "seed", rc.seed, "realization");
    read(r, "T", rc.T, "realization");
    read(r, "V_bar", rc.V_bar, "realization");
    read(r, "p", rc.p, "realization");
    read(r, "timing", rc.timing, "realization");
    if (r.contains("delta")) {
      const DeltaSpec d = parse_delta(r["delta"], "realization.delta");
      if (d.kind == DeltaSpec::Kind::MeanSpacing) bad("realization.delta cannot be mean_spacing");
      rc.delta = d.kind == DeltaSpec::Kind::Number ? d.value : 0.0;
    }
    if (rc.T < 2) bad("realization.T must be at least 2");
    positive(rc.V_bar, "realization.V_bar");
  }

  if (root.contains("ensemble")) {
    const json& e = root["ensemble"];
    check_keys(e, {"T", "realizations", "base_seed", "V_bar", "p", "delta", "threads", "timing"},
               "ensemble");
    EnsembleConfig& ec = c.ensemble;
    read(e, "T", ec.Ts, "ensemble");
    read(e, "realizations", ec.realizations, "ensemble");
    read(e, "base_seed", ec.base_seed, "ensemble");
    read(e, "V_bar", ec.V_bar, "ensemble");
    read(e, "p", ec.p, "ensemble");
    read(e, "threads", ec.threads, "ensemble");
    read(e, "timing", ec.timing, "ensemble");
    if (e.contains("delta")) {
      const DeltaSpec d = parse_delta(e["delta"], "ensemble.delta");
      if (d.kind == DeltaSpec::Kind::MeanSpacing) bad("ensemble.delta cannot be mean_spacing");
      ec.delta = d.kind == DeltaSpec::Kind::Number ? d.value : 0.0;
    }
    if (ec.Ts.empty()) bad("ensemble.T must list at least one size");
    for (int T : ec.Ts) {
      if (T < 2) bad("ensemble.T entries must be at least 2");
    }
    if (ec.realizations < 1) bad("ensemble.realizations must be positive");
    positive(ec.V_bar, "ensemble.V_bar");
  }

  if (root.contains("demo2d")) {
    const json& d = root["demo2d"];
    check_keys(d, {"seed", "T", "p", "prob", "v_high", "eigen_count", "target", "delta",
                   "mass_threshold"},
               "demo2d");
    Demo2DConfig& dc = c.demo;
    read(d, "seed", dc.seed, "demo2d");
    read(d, "T", dc.T, "demo2d");
    read(d, "p", dc.p, "demo2d");
    read(d, "prob", dc.prob, "demo2d");
    read(d, "v_high", dc.v_high, "demo2d");
    read(d, "eigen_count", dc.eigen_count, "demo2d");
    read(d, "target", dc.target, "demo2d");
    read(d, "mass_threshold", dc.mass_threshold, "demo2d");
    if (d.contains("delta")) {
      const DeltaSpec ds = parse_delta(d["delta"], "demo2d.delta");
      if (ds.kind == DeltaSpec::Kind::InverseT) bad("demo2d.delta must be a number or mean_spacing");
      dc.delta = ds.kind == DeltaSpec::Kind::Number ? ds.value : 0.0;
    }
    if (!(dc.prob > 0.0 && dc.prob < 1.0)) bad("demo2d.prob must lie in (0, 1)");
    if (dc.target < 1 || dc.target > dc.eigen_count) bad("demo2d.target must lie in [1, eigen_count]");
  }

  if (root.contains("output")) {
    const json& o = root["output"];
    check_keys(o, {"dir"}, "output");
    std::string dir;
    read(o, "dir", dir, "output");
    if (!dir.empty()) c.out = dir;
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const Error& e) {
    bad(e.what());
  }
  return parse_config(text);
}

void apply_seed_base(RunConfig& c, std::uint64_t base) {
  c.coefficients.seed = base;
  c.realization.seed = base;
  c.ensemble.base_seed = base;
  c.demo.seed = base;
}

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"landscape", "eigs",        "wells",    "agmon",
                                              "verify",    "realization", "ensemble", "demo2d"};
  return names;
}

int run_subcommand(const std::string& name, const RunConfig& config, std::ostream& log) {
  static const std::map<std::string, void (*)(const RunConfig&, std::ostream&)> table{
      {"landscape", cmd_landscape}, {"eigs", cmd_eigs},         {"wells", cmd_wells},
      {"agmon", cmd_agmon},         {"verify", cmd_verify},     {"realization", cmd_realization},
      {"ensemble", cmd_ensemble},   {"demo2d", cmd_demo2d}};
  const auto it = table.find(name);
  if (it == table.end()) {
    log << "error: unknown subcommand '" << name << "'\n";
    return 2;
  }
  try {
    it->second(config, log);
    return 0;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigParse) {
      log << "error: " << e.what() << '\n';
      return 2;
    }
    log << "error: " << e.what() << '\n';
    try {
      write_text_file(config.out / "error.json", error_json(e.tag(), e.what()));
    } catch (const Error&) {
    }
    return 1;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    try {
      write_text_file(config.out / "error.json", error_json("Internal", e.what()));
    } catch (const Error&) {
    }
    return 1;
  }
}

}  // namespace effpot::cli
