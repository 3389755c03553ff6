#include "effpot/wells.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "effpot/errors.hpp"

namespace effpot {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<int> rank_;
};

// Groups items by DSU root, ordering groups by their smallest member.
std::vector<std::vector<std::size_t>> groups(DisjointSets& dsu, std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<long> slot(n, -1);
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t r = dsu.find(x);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(out.size());
      out.emplace_back();
    }
    out[static_cast<std::size_t>(slot[r])].push_back(x);
  }
  return out;
}

}  // namespace

IndexSet sublevel_set(const Eigen::VectorXd& W, double nu) {
  std::vector<Index> out;
  for (Index i = 0; i < W.size(); ++i) {
    if (W[i] <= nu) out.push_back(i);
  }
  return IndexSet::from_sorted(std::move(out));
}

IndexSet sublevel_set(const Landscape& landscape, double nu) { return sublevel_set(landscape.W, nu); }

std::vector<IndexSet> components(const GridSpec& grid, const IndexSet& set) {
  set.check_range(grid.node_count());
  const std::size_t n = set.size();
  DisjointSets dsu(n);
  std::vector<Index> local(static_cast<std::size_t>(grid.node_count()), -1);
  for (std::size_t q = 0; q < n; ++q) local[static_cast<std::size_t>(set[q])] = static_cast<Index>(q);
  for (std::size_t q = 0; q < n; ++q) {
    const Index i = set[q];
    for (int k = 0; k < grid.dim(); ++k) {
      const Index j = grid.forward(i, k);
      if (j >= 0 && local[static_cast<std::size_t>(j)] >= 0) {
        dsu.unite(q, static_cast<std::size_t>(local[static_cast<std::size_t>(j)]));
      }
    }
  }
  std::vector<IndexSet> out;
  for (const auto& g : groups(dsu, n)) {
    std::vector<Index> members;
    members.reserve(g.size());
    for (std::size_t q : g) members.push_back(set[q]);
    out.push_back(IndexSet::from_sorted(std::move(members)));
  }
  return out;
}

WellPartition build_partition(const GridSpec& grid, const Landscape& landscape,
                              std::shared_ptr<const CoefficientField> coeffs, double mu_bar,
                              double delta, const PartitionOptions& options) {
  if (!(mu_bar >= 0.0)) throw Error(ErrorCode::NegativeLevel, "mu_bar must be >= 0");
  if (!(delta > 0.0)) throw Error(ErrorCode::InvalidArgument, "delta must be > 0");
  if (coeffs && mu_bar + delta > coeffs->v_bar) {
    throw Error(ErrorCode::InvalidArgument, "mu_bar + delta exceeds v_bar");
  }
  WellPartition p;
  p.mu_bar = mu_bar;
  p.delta = delta;
  p.nu = mu_bar + delta;
  p.merge_threshold = options.merge_threshold;
  p.stencil = options.stencil;
  p.E = sublevel_set(landscape, p.nu);
  if (p.E.empty()) {
    throw Error(ErrorCode::EmptyWellSet, "E(mu_bar + delta) is empty: level below min 1/u");
  }
  p.components = components(grid, p.E);

  const AgmonGraph graph(grid, agmon_weight(landscape, mu_bar, coeffs), options.stencil);
  p.component_separation = pairwise_separation(graph, p.components);

  const std::size_t nc = p.components.size();
  DisjointSets merge(nc);
  for (std::size_t a = 0; a < nc; ++a) {
    for (std::size_t b = a + 1; b < nc; ++b) {
      // Zero separation (diagonal contact) never defines two wells.
      const double sep = p.component_separation(static_cast<Index>(a), static_cast<Index>(b));
      if (sep < options.merge_threshold || sep == 0.0) {
        merge.unite(a, b);
      }
    }
  }
  const auto cluster_groups = groups(merge, nc);
  p.component_cluster.assign(nc, -1);
  for (std::size_t l = 0; l < cluster_groups.size(); ++l) {
    IndexSet members;
    for (std::size_t c : cluster_groups[l]) {
      p.component_cluster[c] = static_cast<int>(l);
      members = set_union(members, p.components[c]);
    }
    p.clusters.push_back(std::move(members));
  }

  const auto nl = static_cast<Index>(p.clusters.size());
  p.separation = Eigen::MatrixXd::Constant(nl, nl, std::numeric_limits<double>::infinity());
  p.separation.diagonal().setZero();
  for (std::size_t a = 0; a < nc; ++a) {
    for (std::size_t b = 0; b < nc; ++b) {
      const int la = p.component_cluster[a];
      const int lb = p.component_cluster[b];
      if (la == lb) continue;
      double& s = p.separation(la, lb);
      s = std::min(s, p.component_separation(static_cast<Index>(a), static_cast<Index>(b)));
    }
  }
  p.single_cluster = nl == 1;
  p.S_bar = std::numeric_limits<double>::infinity();
  for (Index a = 0; a < nl; ++a) {
    for (Index b = 0; b < nl; ++b) {
      if (a != b) p.S_bar = std::min(p.S_bar, p.separation(a, b));
    }
  }

  const Index n = grid.node_count();
  p.nearest_cluster.assign(static_cast<std::size_t>(n), -1);
  p.rho_nearest = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());
  p.omega_owner.assign(static_cast<std::size_t>(n), -1);
  const double radius = p.S_bar / 2.0;
  for (Index l = 0; l < nl; ++l) {
    const DistanceField field = distance_to_set(graph, p.clusters[static_cast<std::size_t>(l)]);
    for (Index i = 0; i < n; ++i) {
      if (field.h[i] < p.rho_nearest[i]) {
        p.rho_nearest[i] = field.h[i];
        p.nearest_cluster[static_cast<std::size_t>(i)] = static_cast<int>(l);
      }
    }
    // Omega_l: grid-connected part of the open S_bar/2 ball that contains E_l.
    std::vector<Index> stack(p.clusters[static_cast<std::size_t>(l)].begin(),
                             p.clusters[static_cast<std::size_t>(l)].end());
    std::vector<Index> members;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (Index s : stack) seen[static_cast<std::size_t>(s)] = 1;
    while (!stack.empty()) {
      const Index i = stack.back();
      stack.pop_back();
      members.push_back(i);
      for (int k = 0; k < grid.dim(); ++k) {
        for (Index j : {grid.forward(i, k), grid.backward(i, k)}) {
          if (j < 0 || seen[static_cast<std::size_t>(j)]) continue;
          if (!(field.h[j] < radius)) continue;
          seen[static_cast<std::size_t>(j)] = 1;
          stack.push_back(j);
        }
      }
    }
    for (Index i : members) {
      auto& owner = p.omega_owner[static_cast<std::size_t>(i)];
      if (owner >= 0) {
        throw Error(ErrorCode::OverlappingComponents, "subregions Omega overlap");
      }
      owner = static_cast<int>(l);
    }
    p.omegas.push_back(IndexSet::from_unsorted(std::move(members)));
  }
  return p;
}

DistanceField cluster_distance(const GridSpec& grid, const Landscape& landscape,
                               std::shared_ptr<const CoefficientField> coeffs,
                               const WellPartition& partition, std::size_t cluster) {
  const AgmonGraph graph(grid, agmon_weight(landscape, partition.mu_bar, std::move(coeffs)),
                         partition.stencil);
  return distance_to_set(graph, partition.clusters.at(cluster), "cluster " + std::to_string(cluster));
}

void check_partition_invariants(const GridSpec& grid, const Landscape& landscape,
                                std::shared_ptr<const CoefficientField> coeffs,
                                const WellPartition& p) {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); };
  const Index n = grid.node_count();

  IndexSet comp_union;
  std::size_t comp_total = 0;
  for (const auto& c : p.components) {
    comp_union = set_union(comp_union, c);
    comp_total += c.size();
  }
  if (!(comp_union == p.E) || comp_total != p.E.size()) fail("components do not partition E");

  IndexSet cluster_union;
  std::size_t cluster_total = 0;
  for (const auto& c : p.clusters) {
    cluster_union = set_union(cluster_union, c);
    cluster_total += c.size();
  }
  if (!(cluster_union == p.E) || cluster_total != p.E.size()) fail("clusters do not partition E");
  for (std::size_t c = 0; c < p.components.size(); ++c) {
    const auto& cl = p.clusters[static_cast<std::size_t>(p.component_cluster[c])];
    for (Index i : p.components[c]) {
      if (!cl.contains(i)) fail("component not contained in its cluster");
    }
  }

  std::vector<int> owner(static_cast<std::size_t>(n), -1);
  const AgmonGraph graph(grid, agmon_weight(landscape, p.mu_bar, coeffs), p.stencil);
  for (std::size_t l = 0; l < p.clusters.size(); ++l) {
    for (Index i : p.clusters[l]) {
      if (!p.omegas[l].contains(i)) fail("E_l not contained in Omega_l");
    }
    for (Index i : p.omegas[l]) {
      if (owner[static_cast<std::size_t>(i)] >= 0) fail("Omega sets overlap");
      owner[static_cast<std::size_t>(i)] = static_cast<int>(l);
    }
    const DistanceField own = distance_to_set(graph, p.clusters[l]);
    for (Index i : p.omegas[l]) {
      if (!(own.h[i] < p.S_bar / 2.0)) fail("Omega node not within S_bar/2 of its well");
    }
    for (std::size_t m = 0; m < p.clusters.size(); ++m) {
      if (m == l) continue;
      const DistanceField other = distance_to_set(graph, p.clusters[m]);
      for (Index i : p.omegas[l]) {
        if (other.h[i] < p.S_bar / 2.0) fail("Omega node within S_bar/2 of another well");
      }
    }
  }
}

}  // namespace effpot
