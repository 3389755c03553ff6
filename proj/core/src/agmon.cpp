#include "effpot/agmon.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <utility>

#include "effpot/errors.hpp"

namespace effpot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double inv_a(const CoefficientField* cf, Index i, int axis) {
  return cf ? 1.0 / cf->a_at(i, axis) : 1.0;
}

}  // namespace

std::string_view stencil_name(Stencil s) noexcept {
  return s == Stencil::Axis ? "axis" : "diagonal";
}

Stencil parse_stencil(std::string_view name) {
  if (name == "axis") return Stencil::Axis;
  if (name == "diagonal") return Stencil::Diagonal;
  throw Error(ErrorCode::InvalidArgument, "unknown stencil '" + std::string(name) + "'");
}

AgmonWeight agmon_weight(const Eigen::VectorXd& W, double mu,
                         std::shared_ptr<const CoefficientField> coeffs) {
  if (!(mu >= 0.0)) throw Error(ErrorCode::NegativeLevel, "mu must be >= 0");
  AgmonWeight out;
  out.mu = mu;
  out.w = (W.array() - mu).max(0.0);
  out.coeffs = std::move(coeffs);
  return out;
}

AgmonWeight agmon_weight(const Landscape& landscape, double mu,
                         std::shared_ptr<const CoefficientField> coeffs) {
  return agmon_weight(landscape.W, mu, std::move(coeffs));
}

AgmonGraph::AgmonGraph(const GridSpec& grid, const AgmonWeight& weight, Stencil stencil)
    : stencil_(stencil), mu_(weight.mu) {
  const Index n = grid.node_count();
  if (weight.w.size() != n) throw Error(ErrorCode::LengthMismatch, "weight length != node count");
  if (stencil == Stencil::Diagonal && grid.dim() != 2) {
    throw Error(ErrorCode::InvalidArgument, "diagonal stencil requires a 2D grid");
  }
  const CoefficientField* cf = weight.coeffs.get();
  const double h = grid.spacing();
  const Eigen::ArrayXd root_w = weight.w.array().sqrt();

  struct Raw {
    Index i, j;
    double cost;
  };
  std::vector<Raw> raw;
  raw.reserve(static_cast<std::size_t>(n) * (stencil == Stencil::Axis ? 2u : 4u));
  grid.for_each_edge([&](Index i, Index j, int k) {
    const double b = (inv_a(cf, i, k) + inv_a(cf, j, k)) / 2.0;
    raw.push_back({i, j, h * std::sqrt(b) * (root_w[i] + root_w[j]) / 2.0});
  });
  if (stencil == Stencil::Diagonal) {
    const double len = h * std::sqrt(2.0);
    for (Index i = 0; i < n; ++i) {
      const Index f0 = grid.forward(i, 0);
      if (f0 < 0) continue;
      for (Index j : {grid.forward(f0, 1), grid.backward(f0, 1)}) {
        if (j < 0 || j == i) continue;
        const double b = (inv_a(cf, i, 0) + inv_a(cf, j, 0) + inv_a(cf, i, 1) + inv_a(cf, j, 1)) / 4.0;
        raw.push_back({i, j, len * std::sqrt(b) * (root_w[i] + root_w[j]) / 2.0});
      }
    }
  }

  offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const Raw& e : raw) {
    ++offsets_[static_cast<std::size_t>(e.i) + 1];
    ++offsets_[static_cast<std::size_t>(e.j) + 1];
  }
  for (std::size_t q = 1; q < offsets_.size(); ++q) offsets_[q] += offsets_[q - 1];
  arcs_.resize(static_cast<std::size_t>(offsets_.back()));
  std::vector<Index> fill(offsets_.begin(), offsets_.end() - 1);
  for (const Raw& e : raw) {
    arcs_[static_cast<std::size_t>(fill[static_cast<std::size_t>(e.i)]++)] = {e.j, e.cost};
    arcs_[static_cast<std::size_t>(fill[static_cast<std::size_t>(e.j)]++)] = {e.i, e.cost};
  }
}

DistanceField distance_to_set(const AgmonGraph& graph, const IndexSet& sources,
                              std::string source_label) {
  if (sources.empty()) throw Error(ErrorCode::EmptySourceSet, "distance to an empty set");
  const Index n = graph.node_count();
  sources.check_range(n);

  DistanceField out;
  out.h = Eigen::VectorXd::Constant(n, kInf);
  out.sources = sources;
  out.stencil = graph.stencil();
  out.mu = graph.mu();
  out.source_label = std::move(source_label);

  using Item = std::pair<double, Index>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  std::vector<char> settled(static_cast<std::size_t>(n), 0);
  for (Index s : sources) {
    out.h[s] = 0.0;
    heap.emplace(0.0, s);
  }
  while (!heap.empty()) {
    const auto [d, i] = heap.top();
    heap.pop();
    if (settled[static_cast<std::size_t>(i)]) continue;
    settled[static_cast<std::size_t>(i)] = 1;
    for (const auto& arc : graph.arcs(i)) {
      const double cand = d + arc.cost;
      if (cand < out.h[arc.to]) {
        out.h[arc.to] = cand;
        heap.emplace(cand, arc.to);
      }
    }
  }
  return out;
}

DistanceField distance_to_set(const GridSpec& grid, const AgmonWeight& weight,
                              const IndexSet& sources, Stencil stencil) {
  return distance_to_set(AgmonGraph(grid, weight, stencil), sources);
}

NearestSet nearest_set(const AgmonGraph& graph, const std::vector<IndexSet>& sets) {
  const Index n = graph.node_count();
  NearestSet out;
  out.h = Eigen::VectorXd::Constant(n, kInf);
  out.label.assign(static_cast<std::size_t>(n), -1);
  using Item = std::pair<double, Index>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (std::size_t k = 0; k < sets.size(); ++k) {
    sets[k].check_range(n);
    for (Index s : sets[k]) {
      if (out.label[static_cast<std::size_t>(s)] >= 0) {
        throw Error(ErrorCode::OverlappingComponents, "source sets share a node");
      }
      out.h[s] = 0.0;
      out.label[static_cast<std::size_t>(s)] = static_cast<int>(k);
      heap.emplace(0.0, s);
    }
  }
  if (heap.empty()) throw Error(ErrorCode::EmptySourceSet, "nearest set among empty sets");
  std::vector<char> settled(static_cast<std::size_t>(n), 0);
  while (!heap.empty()) {
    const auto [d, i] = heap.top();
    heap.pop();
    if (settled[static_cast<std::size_t>(i)]) continue;
    settled[static_cast<std::size_t>(i)] = 1;
    const int lab = out.label[static_cast<std::size_t>(i)];
    for (const auto& arc : graph.arcs(i)) {
      const double cand = d + arc.cost;
      const auto to = static_cast<std::size_t>(arc.to);
      if (cand < out.h[arc.to] || (cand == out.h[arc.to] && !settled[to] && lab < out.label[to])) {
        out.h[arc.to] = cand;
        out.label[to] = lab;
        heap.emplace(cand, arc.to);
      }
    }
  }
  return out;
}

double min_over(const DistanceField& field, const IndexSet& targets) {
  double best = kInf;
  for (Index i : targets) best = std::min(best, field.h[i]);
  return best;
}

Eigen::MatrixXd pairwise_separation(const AgmonGraph& graph, const std::vector<IndexSet>& sets) {
  if (sets.empty()) throw Error(ErrorCode::EmptyIndexSet, "no components given");
  const Index n = graph.node_count();
  std::vector<int> owner(static_cast<std::size_t>(n), -1);
  for (std::size_t l = 0; l < sets.size(); ++l) {
    sets[l].check_range(n);
    for (Index i : sets[l]) {
      auto& o = owner[static_cast<std::size_t>(i)];
      if (o >= 0) throw Error(ErrorCode::OverlappingComponents, "components share a node");
      o = static_cast<int>(l);
    }
  }
  const auto r = static_cast<Index>(sets.size());
  Eigen::MatrixXd sep = Eigen::MatrixXd::Zero(r, r);
  if (r == 1) return sep;
  for (Index b = 0; b < r; ++b) {
    const DistanceField field = distance_to_set(graph, sets[static_cast<std::size_t>(b)]);
    for (Index a = 0; a < r; ++a) {
      if (a != b) sep(a, b) = min_over(field, sets[static_cast<std::size_t>(a)]);
    }
  }
  // Both orientations compute the same graph distance; keep the smaller rounding.
  for (Index a = 0; a < r; ++a) {
    for (Index b = a + 1; b < r; ++b) {
      const double v = std::min(sep(a, b), sep(b, a));
      sep(a, b) = sep(b, a) = v;
    }
  }
  return sep;
}

Eigen::MatrixXd pairwise_separation(const GridSpec& grid, const AgmonWeight& weight,
                                    const std::vector<IndexSet>& sets, Stencil stencil) {
  return pairwise_separation(AgmonGraph(grid, weight, stencil), sets);
}

double max_lipschitz_excess(const AgmonGraph& graph, const Eigen::VectorXd& h) {
  double worst = -kInf;
  for (Index i = 0; i < graph.node_count(); ++i) {
    for (const auto& arc : graph.arcs(i)) {
      worst = std::max(worst, h[arc.to] - (h[i] + arc.cost));
    }
  }
  return worst;
}

}  // namespace effpot
