#include "effpot/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <thread>

#include "effpot/agmon.hpp"
#include "effpot/errors.hpp"
#include "effpot/landscape.hpp"
#include "effpot/prng.hpp"
#include "effpot/wells.hpp"

namespace effpot {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}  // namespace

Instance gen_uniform_1d(std::uint64_t seed, int T, double V_bar, int p) {
  if (T < 2) throw Error(ErrorCode::InvalidArgument, "T must be at least 2");
  if (!(V_bar > 0.0)) throw Error(ErrorCode::InvalidArgument, "V_bar must be positive");
  GridSpec grid = build_grid(1, {T}, p, Topology::Torus);
  Rng rng(seed);
  std::vector<double> cell(static_cast<std::size_t>(T));
  for (double& v : cell) v = V_bar * rng.uniform();
  std::vector<double> V(static_cast<std::size_t>(grid.node_count()));
  for (Index i = 0; i < grid.node_count(); ++i) {
    V[static_cast<std::size_t>(i)] = cell[static_cast<std::size_t>(grid.unit_cell(i))];
  }
  auto coeffs = std::make_shared<CoefficientField>(make_coefficients(grid, std::move(V), V_bar));
  return {grid, coeffs};
}

Instance gen_bernoulli_2d(std::uint64_t seed, int T, double v_high, double prob, int p) {
  if (!(prob > 0.0 && prob < 1.0)) throw Error(ErrorCode::InvalidArgument, "prob must lie in (0, 1)");
  if (!(v_high > 0.0)) throw Error(ErrorCode::InvalidArgument, "v_high must be positive");
  GridSpec grid = build_grid(2, {T, T}, p, Topology::Torus);
  Rng rng(seed);
  std::vector<double> cell(static_cast<std::size_t>(T) * static_cast<std::size_t>(T));
  bool any = false;
  for (double& v : cell) {
    v = rng.bernoulli(prob) ? v_high : 0.0;
    any = any || v > 0.0;
  }
  if (!any) {
    throw Error(ErrorCode::AllZeroRealization, "seed " + std::to_string(seed) + " drew V = 0");
  }
  std::vector<double> V(static_cast<std::size_t>(grid.node_count()));
  for (Index i = 0; i < grid.node_count(); ++i) {
    V[static_cast<std::size_t>(i)] = cell[static_cast<std::size_t>(grid.unit_cell(i))];
  }
  auto coeffs = std::make_shared<CoefficientField>(make_coefficients(grid, std::move(V), v_high));
  return {grid, coeffs};
}

double lower_median(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorCode::InsufficientData, "median of an empty list");
  std::sort(values.begin(), values.end());
  return values[(values.size() - 1) / 2];
}

RealizationRecord run_realization(const RealizationConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  RealizationRecord rec;
  rec.seed = config.seed;
  rec.T = config.T;
  rec.delta = config.delta > 0.0 ? config.delta : 1.0 / config.T;
  try {
    const Instance inst = gen_uniform_1d(config.seed, config.T, config.V_bar, config.p);
    const DiscreteOperator op = assemble(inst.grid, inst.coeffs);
    const Landscape land = solve_landscape(op);
    const EigenSet eig = eig_smallest(op, 2, config.eigen);
    rec.lambda1 = eig.values[0];
    rec.lambda2 = eig.values[1];
    rec.gap = rec.lambda2 - rec.lambda1;

    const IndexSet E = sublevel_set(land, rec.lambda1 + rec.delta);
    const std::vector<IndexSet> comps = components(inst.grid, E);
    rec.component_count = comps.size();
    if (comps.empty()) throw Error(ErrorCode::EmptyWellSet, "E(lambda1 + delta) is empty");
    if (comps.size() == 1) {
      rec.S_min = kInf;
      rec.S_median = kInf;
    } else {
      const AgmonGraph graph(inst.grid, agmon_weight(land, rec.lambda1, inst.coeffs));
      const std::size_t c = comps.size();
      const std::size_t pairs = c == 2 ? 1 : c;
      std::vector<double> seps;
      seps.reserve(pairs);
      for (std::size_t k = 0; k < pairs; ++k) {
        const DistanceField d = distance_to_set(graph, comps[k]);
        seps.push_back(min_over(d, comps[(k + 1) % c]));
      }
      rec.S_min = *std::min_element(seps.begin(), seps.end());
      rec.S_median = lower_median(seps);
    }
  } catch (const Error& e) {
    rec.error_tag = e.tag();
    rec.lambda1 = rec.lambda2 = rec.gap = rec.S_min = rec.S_median = kNaN;
  }
  if (config.timing) {
    rec.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }
  return rec;
}

std::vector<RealizationRecord> run_ensemble(const EnsembleConfig& config) {
  if (config.realizations < 1) throw Error(ErrorCode::InvalidArgument, "realizations must be >= 1");
  if (config.Ts.empty()) throw Error(ErrorCode::InvalidArgument, "no T values given");
  std::vector<RealizationConfig> jobs;
  for (int T : config.Ts) {
    for (int r = 0; r < config.realizations; ++r) {
      RealizationConfig rc;
      rc.seed = config.base_seed + static_cast<std::uint64_t>(r);
      rc.T = T;
      rc.V_bar = config.V_bar;
      rc.p = config.p;
      rc.delta = config.delta;
      rc.eigen = config.eigen;
      rc.timing = config.timing;
      jobs.push_back(rc);
    }
  }
  std::vector<RealizationRecord> out(jobs.size());
  unsigned workers = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(jobs.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) out[k] = run_realization(jobs[k]);
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return out;
}

EnsembleSummary aggregate(std::vector<RealizationRecord> records, bool fit) {
  if (records.empty()) throw Error(ErrorCode::InsufficientData, "no records to aggregate");
  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return a.T != b.T ? a.T < b.T : a.seed < b.seed;
  });
  EnsembleSummary s;
  std::map<int, std::vector<const RealizationRecord*>> by_T;
  for (const auto& r : records) by_T[r.T].push_back(&r);
  for (const auto& [T, recs] : by_T) {
    PerTSummary pt;
    pt.T = T;
    pt.count = recs.size();
    std::vector<double> S;
    std::size_t gaps = 0;
    for (const auto* r : recs) {
      if (!r->ok()) {
        ++pt.failures;
        continue;
      }
      if (r->single_component()) ++pt.single_component;
      S.push_back(r->S_min);
      if (r->gap > r->delta) ++gaps;
    }
    pt.median_S = S.empty() ? kNaN : lower_median(S);
    pt.gap_fraction = S.empty() ? kNaN : static_cast<double>(gaps) / static_cast<double>(S.size());
    s.per_T.push_back(pt);
  }
  s.medians_nondecreasing = true;
  for (std::size_t k = 1; k < s.per_T.size(); ++k) {
    if (!(s.per_T[k].median_S >= s.per_T[k - 1].median_S)) s.medians_nondecreasing = false;
  }
  std::vector<double> x, y;
  for (const auto& pt : s.per_T) {
    if (std::isfinite(pt.median_S) && pt.median_S > 0.0) {
      x.push_back(std::log(static_cast<double>(pt.T)));
      y.push_back(std::log(pt.median_S));
    }
  }
  if (x.size() >= 3) {
    const auto n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      mx += x[k];
      my += y[k];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      sxx += (x[k] - mx) * (x[k] - mx);
      sxy += (x[k] - mx) * (y[k] - my);
    }
    s.exponent = sxy / sxx;
    s.prefactor = std::exp(my - s.exponent * mx);
    s.fit_available = true;
  } else if (fit) {
    throw Error(ErrorCode::InsufficientData,
                "power-law fit needs at least 3 distinct T with a finite median separation");
  }
  s.records = std::move(records);
  return s;
}

}  // namespace effpot
