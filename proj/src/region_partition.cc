// Copyright 2026 The Streetaddr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "streetaddr/region_partition.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <tuple>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <fmt/format.h>

#include "streetaddr/error.h"

namespace streetaddr {

namespace {

constexpr double kClusterTol = 1e-8;
constexpr int kFanSteps = 12;
constexpr double kTieTol = 1e-9;

using Adjacency = std::vector<std::vector<std::pair<std::size_t, double>>>;

Adjacency adjacency(const AffinityGraph& g) {
  Adjacency adj(g.node_count);
  for (const auto& l : g.links) {
    if (l.u == l.v) continue;
    adj[l.u].push_back({l.v, l.weight});
    adj[l.v].push_back({l.u, l.weight});
  }
  return adj;
}

// Flip so the largest-magnitude entry (first on ties) is positive.
void normalize_sign(Eigen::VectorXd& v) {
  Eigen::Index at = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (std::abs(v(i)) > std::abs(v(at))) at = i;
  }
  if (v(at) < 0) v = -v;
}

struct Sweep {
  std::vector<std::size_t> order;
  std::vector<double> ncut;  // ncut[k]: first k+1 entries of order as side A
};

// Scores every threshold split of D^-1/2 v incrementally.
Sweep sweep(const Adjacency& adj, const std::vector<double>& deg, const Eigen::VectorXd& v) {
  const std::size_t n = deg.size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = v(static_cast<Eigen::Index>(i)) / std::sqrt(deg[i]);
  Sweep s;
  s.order.resize(n);
  std::iota(s.order.begin(), s.order.end(), 0);
  std::stable_sort(s.order.begin(), s.order.end(),
                   [&](std::size_t a, std::size_t b) { return y[a] < y[b]; });
  s.ncut.assign(n - 1, std::numeric_limits<double>::infinity());
  const double vol = std::accumulate(deg.begin(), deg.end(), 0.0);
  std::vector<bool> in(n, false);
  double cut = 0.0, vol_a = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const std::size_t u = s.order[k];
    for (auto [x, w] : adj[u]) cut += in[x] ? -w : w;
    in[u] = true;
    vol_a += deg[u];
    const double vol_b = vol - vol_a;
    if (vol_a <= 0.0 || vol_b <= 0.0) continue;
    s.ncut[k] = cut / vol_a + cut / vol_b;
  }
  return s;
}

struct EigenPairs {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns
};

EigenPairs dense_eigen(const AffinityGraph& g, const std::vector<double>& deg) {
  const auto n = static_cast<Eigen::Index>(g.node_count);
  Eigen::MatrixXd lap = Eigen::MatrixXd::Identity(n, n);
  for (const auto& l : g.links) {
    if (l.u == l.v) continue;
    const double x = l.weight / std::sqrt(deg[l.u] * deg[l.v]);
    lap(static_cast<Eigen::Index>(l.u), static_cast<Eigen::Index>(l.v)) -= x;
    lap(static_cast<Eigen::Index>(l.v), static_cast<Eigen::Index>(l.u)) -= x;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
  if (solver.info() != Eigen::Success) throw Error("eigensolver failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

// Lowest eigenpairs (the trivial one first) by inverse subspace iteration on
// L + shift*I with the known null vector deflated.
EigenPairs sparse_eigen(const AffinityGraph& g, const std::vector<double>& deg) {
  const auto n = static_cast<Eigen::Index>(g.node_count);
  constexpr Eigen::Index kBlock = 8;
  constexpr double kShift = 1e-6;
  constexpr int kMaxIter = 3000;

  std::vector<Eigen::Triplet<double>> trip;
  for (Eigen::Index i = 0; i < n; ++i) trip.emplace_back(i, i, 1.0);
  for (const auto& l : g.links) {
    if (l.u == l.v) continue;
    const double x = -l.weight / std::sqrt(deg[l.u] * deg[l.v]);
    trip.emplace_back(static_cast<Eigen::Index>(l.u), static_cast<Eigen::Index>(l.v), x);
    trip.emplace_back(static_cast<Eigen::Index>(l.v), static_cast<Eigen::Index>(l.u), x);
  }
  Eigen::SparseMatrix<double> lap(n, n);
  lap.setFromTriplets(trip.begin(), trip.end());
  Eigen::SparseMatrix<double> shifted = lap;
  for (Eigen::Index i = 0; i < n; ++i) shifted.coeffRef(i, i) += kShift;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(shifted);
  if (ldlt.info() != Eigen::Success) throw Error("sparse factorization failed");

  Eigen::VectorXd null(n);
  for (Eigen::Index i = 0; i < n; ++i) null(i) = std::sqrt(deg[static_cast<std::size_t>(i)]);
  null.normalize();

  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const Eigen::Index p = std::min<Eigen::Index>(kBlock, n - 1);
  Eigen::MatrixXd x(n, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) x(i, j) = uni(rng);
  }
  auto deflate_orthonormalize = [&](Eigen::MatrixXd& m) {
    for (int pass = 0; pass < 2; ++pass) m -= null * (null.transpose() * m);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    m = qr.householderQ() * Eigen::MatrixXd::Identity(n, p);
  };
  deflate_orthonormalize(x);

  Eigen::VectorXd ritz;
  for (int it = 0; it < kMaxIter; ++it) {
    Eigen::MatrixXd y(n, p);
    for (Eigen::Index j = 0; j < p; ++j) y.col(j) = ldlt.solve(x.col(j));
    deflate_orthonormalize(y);
    const Eigen::MatrixXd ly = lap * y;
    const Eigen::MatrixXd h = y.transpose() * ly;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(0.5 * (h + h.transpose()));
    x = y * small.eigenvectors();
    ritz = small.eigenvalues();
    const Eigen::MatrixXd lx = ly * small.eigenvectors();
    // Converged once every pair in the lowest eigenvalue's cluster, plus one
    // beyond it, is accurate.
    Eigen::Index need = 1;
    while (need < p && std::abs(ritz(need) - ritz(0)) <= kClusterTol * std::max(1.0, ritz(0))) {
      ++need;
    }
    need = std::min(p, need + 1);
    bool done = true;
    for (Eigen::Index j = 0; j < need && done; ++j) {
      done = (lx.col(j) - ritz(j) * x.col(j)).norm() <= 1e-10;
    }
    if (done) break;
  }
  EigenPairs out;
  out.values.resize(p + 1);
  out.vectors.resize(n, p + 1);
  out.values(0) = 0.0;
  out.vectors.col(0) = null;
  out.values.tail(p) = ritz;
  out.vectors.rightCols(p) = x;
  return out;
}

}  // namespace

void PartitionParams::validate() const {
  if (max_region_edges < 1) throw ValidationError("max_region_edges must be >= 1");
  if (!(ncut_stop > 0.0)) throw ValidationError("ncut_stop must be positive");
  if (sigma_mode == SigmaMode::Fixed && !(fixed_sigma_m > 0.0)) {
    throw ValidationError("fixed sigma must be positive");
  }
}

std::vector<double> AffinityGraph::degrees() const {
  std::vector<double> d(node_count, 0.0);
  for (const auto& l : links) {
    if (l.u == l.v) continue;
    d[l.u] += l.weight;
    d[l.v] += l.weight;
  }
  return d;
}

bool AffinityGraph::connected() const {
  if (node_count <= 1) return true;
  const Adjacency adj = adjacency(*this);
  std::vector<bool> seen(node_count, false);
  std::vector<std::size_t> stack = {0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (auto [v, w] : adj[u]) {
      if (seen[v] || !(w > 0.0)) continue;
      seen[v] = true;
      ++reached;
      stack.push_back(v);
    }
  }
  return reached == node_count;
}

double ncut_value(const AffinityGraph& graph, const std::vector<bool>& in_a) {
  if (in_a.size() != graph.node_count) throw ValidationError("cut size does not match graph");
  const auto na = static_cast<std::size_t>(std::count(in_a.begin(), in_a.end(), true));
  if (na == 0 || na == graph.node_count) throw ValidationError("both sides of a cut must be nonempty");
  double cut = 0.0, assoc_a = 0.0, assoc_b = 0.0;
  for (const auto& l : graph.links) {
    if (l.u == l.v) continue;
    (in_a[l.u] ? assoc_a : assoc_b) += l.weight;
    (in_a[l.v] ? assoc_a : assoc_b) += l.weight;
    if (in_a[l.u] != in_a[l.v]) cut += l.weight;
  }
  if (!(assoc_a > 0.0) || !(assoc_b > 0.0)) {
    throw DegenerateCut("a side of the cut has zero association volume");
  }
  return cut / assoc_a + cut / assoc_b;
}

Bisection bisect(const AffinityGraph& graph, const BisectOptions& options) {
  const std::size_t n = graph.node_count;
  if (n < 2) throw ValidationError("bisect needs at least two nodes");
  if (!graph.connected()) throw NotConnected("bisect needs a connected graph");
  const std::vector<double> deg = graph.degrees();
  const Adjacency adj = adjacency(graph);

  const EigenPairs eig =
      n <= options.dense_limit ? dense_eigen(graph, deg) : sparse_eigen(graph, deg);
  const double lambda2 = eig.values(1);

  // Basis of the eigenspace of the second-smallest eigenvalue.
  std::vector<Eigen::VectorXd> basis;
  for (Eigen::Index k = 1; k < eig.values.size(); ++k) {
    if (std::abs(eig.values(k) - lambda2) > kClusterTol * std::max(1.0, std::abs(lambda2))) break;
    basis.push_back(eig.vectors.col(k));
  }

  std::vector<Eigen::VectorXd> candidates;
  if (basis.size() == 1) {
    candidates.push_back(basis[0]);
  } else {
    const std::size_t m = std::min<std::size_t>(basis.size(), 3);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        for (int k = 0; k < kFanSteps; ++k) {
          const double theta = M_PI * k / kFanSteps;
          Eigen::VectorXd v = std::cos(theta) * basis[i] + std::sin(theta) * basis[j];
          v.normalize();
          candidates.push_back(std::move(v));
        }
      }
    }
  }

  std::vector<Sweep> sweeps;
  double low = std::numeric_limits<double>::infinity();
  for (Eigen::VectorXd& v : candidates) {
    normalize_sign(v);
    sweeps.push_back(sweep(adj, deg, v));
    for (double x : sweeps.back().ncut) low = std::min(low, x);
  }
  if (!std::isfinite(low)) throw DegenerateCut("no threshold split has positive volume on both sides");

  Bisection best;
  best.eigenvalue = lambda2;
  const double tol = kTieTol * std::max(1.0, low);
  for (std::size_t c = 0; c < sweeps.size(); ++c) {
    const Sweep& s = sweeps[c];
    for (std::size_t k = 0; k < s.ncut.size(); ++k) {
      if (!(s.ncut[k] <= low + tol)) continue;
      std::vector<bool> in_a(n, false);
      for (std::size_t i = 0; i <= k; ++i) in_a[s.order[i]] = true;
      if (!in_a[0]) in_a.flip();
      if (!best.in_a.empty() && (!options.prefer || !options.prefer(in_a, best.in_a))) continue;
      best.in_a = std::move(in_a);
      best.vector.assign(candidates[c].data(), candidates[c].data() + candidates[c].size());
    }
  }
  best.ncut = ncut_value(graph, best.in_a);
  return best;
}

AffinityGraph road_affinities(const RoadGraph& graph, const PartitionParams& params) {
  // Components, for the per-component sigma.
  std::vector<std::size_t> comp(graph.node_count(), SIZE_MAX);
  std::size_t ncomp = 0;
  for (NodeId s = 0; s < graph.node_count(); ++s) {
    if (comp[s] != SIZE_MAX) continue;
    std::vector<NodeId> stack = {s};
    comp[s] = ncomp;
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      for (EdgeId e : graph.incident(u)) {
        const NodeId v = graph.edge(e).a == u ? graph.edge(e).b : graph.edge(e).a;
        if (comp[v] == SIZE_MAX) {
          comp[v] = ncomp;
          stack.push_back(v);
        }
      }
    }
    ++ncomp;
  }
  std::vector<double> sum(ncomp, 0.0);
  std::vector<std::size_t> count(ncomp, 0);
  for (const Edge& e : graph.edges()) {
    sum[comp[e.a]] += e.length_m;
    ++count[comp[e.a]];
  }
  AffinityGraph g;
  g.node_count = graph.node_count();
  for (const Edge& e : graph.edges()) {
    const std::size_t c = comp[e.a];
    const double sigma = params.sigma_mode == SigmaMode::Fixed ? params.fixed_sigma_m
                                                               : sum[c] / static_cast<double>(count[c]);
    g.links.push_back({e.a, e.b, std::exp(-e.length_m / sigma)});
  }
  return g;
}

namespace {

class Partitioner {
 public:
  Partitioner(const RoadGraph& graph, const AffinityGraph& affinities,
              const PartitionParams& params, const BisectOptions& options)
      : graph_(graph),
        aff_(affinities),
        params_(params),
        options_(options),
        mark_(graph.node_count(), kUnmarked) {}

  std::vector<std::vector<NodeId>> run() {
    std::vector<bool> seen(graph_.node_count(), false);
    for (NodeId s = 0; s < graph_.node_count(); ++s) {
      if (seen[s]) continue;
      std::vector<NodeId> all(graph_.node_count());
      std::iota(all.begin(), all.end(), 0);
      // Component of s within the whole graph.
      auto comps = components_of(all, s);
      for (NodeId v : comps) seen[v] = true;
      split(std::move(comps));
    }
    return std::move(leaves_);
  }

 private:
  static constexpr std::size_t kUnmarked = SIZE_MAX;

  // Connected piece of `nodes` (sorted) containing `start`, sorted.
  std::vector<NodeId> components_of(const std::vector<NodeId>& nodes, NodeId start) {
    ++stamp_;
    for (NodeId v : nodes) mark_[v] = stamp_;
    std::vector<NodeId> out = {start};
    std::vector<NodeId> stack = {start};
    mark_[start] = kUnmarked;
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      for (EdgeId e : graph_.incident(u)) {
        const NodeId v = graph_.edge(e).a == u ? graph_.edge(e).b : graph_.edge(e).a;
        if (mark_[v] != stamp_) continue;
        mark_[v] = kUnmarked;
        out.push_back(v);
        stack.push_back(v);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<std::vector<NodeId>> pieces(const std::vector<NodeId>& nodes) {
    std::vector<std::vector<NodeId>> out;
    std::vector<bool> done(nodes.size(), false);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (done[i]) continue;
      auto piece = components_of(nodes, nodes[i]);
      for (NodeId v : piece) {
        done[static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), v) -
                                      nodes.begin())] = true;
      }
      out.push_back(std::move(piece));
    }
    return out;
  }

  // Node positions of the lesser side, sorted by (y, x). Ties between equal
  // cuts are broken on this, so the outcome does not depend on node ids.
  std::vector<std::pair<double, double>> split_key(const std::vector<NodeId>& nodes,
                                                   const std::vector<bool>& in_a) const {
    std::vector<std::pair<double, double>> a, b;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const Point p = graph_.node(nodes[i]);
      (in_a[i] ? a : b).emplace_back(p.y, p.x);
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return std::min(a, b);
  }

  void split(std::vector<NodeId> nodes) {
    std::map<NodeId, std::size_t> local;
    for (std::size_t i = 0; i < nodes.size(); ++i) local[nodes[i]] = i;
    AffinityGraph sub;
    sub.node_count = nodes.size();
    std::size_t edge_count = 0;
    for (std::size_t i = 0; i < aff_.links.size(); ++i) {
      const auto& l = aff_.links[i];
      auto a = local.find(static_cast<NodeId>(l.u));
      auto b = local.find(static_cast<NodeId>(l.v));
      if (a == local.end() || b == local.end()) continue;
      ++edge_count;
      sub.links.push_back({a->second, b->second, l.weight});
    }
    if (edge_count <= params_.max_region_edges || nodes.size() < 2) {
      leaves_.push_back(std::move(nodes));
      return;
    }
    BisectOptions opts = options_;
    opts.prefer = [&](const std::vector<bool>& a, const std::vector<bool>& b) {
      return split_key(nodes, a) < split_key(nodes, b);
    };
    const Bisection cut = bisect(sub, opts);
    if (cut.ncut > params_.ncut_stop) {
      leaves_.push_back(std::move(nodes));
      return;
    }
    std::vector<NodeId> side_a, side_b;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      (cut.in_a[i] ? side_a : side_b).push_back(nodes[i]);
    }
    for (auto* side : {&side_a, &side_b}) {
      for (auto& piece : pieces(*side)) split(std::move(piece));
    }
  }

  const RoadGraph& graph_;
  const AffinityGraph& aff_;
  const PartitionParams& params_;
  const BisectOptions& options_;
  std::vector<std::size_t> mark_;
  std::size_t stamp_ = 0;
  std::vector<std::vector<NodeId>> leaves_;
};

}  // namespace

std::vector<Region> summarize_regions(const RoadGraph& graph,
                                      const std::vector<std::size_t>& region_of_node,
                                      const std::vector<std::size_t>& region_of_edge,
                                      std::size_t region_count) {
  std::vector<Region> regions(region_count);
  for (NodeId v = 0; v < region_of_node.size(); ++v) regions.at(region_of_node[v]).nodes.push_back(v);
  for (EdgeId e = 0; e < region_of_edge.size(); ++e) regions.at(region_of_edge[e]).edges.push_back(e);
  for (Region& r : regions) {
    std::vector<Point> pts;
    Point sum{};
    for (NodeId v : r.nodes) {
      pts.push_back(graph.node(v));
      sum = sum + graph.node(v);
    }
    if (!r.nodes.empty()) r.centroid = (1.0 / static_cast<double>(r.nodes.size())) * sum;
    r.hull_area_m2 = convex_hull_area(std::move(pts));
    r.road_density =
        r.hull_area_m2 > 0.0 ? static_cast<double>(r.edges.size()) / r.hull_area_m2 : 0.0;
  }
  return regions;
}

RegionAssignment partition(const RoadGraph& graph, const PartitionParams& params,
                           const BisectOptions& options) {
  params.validate();
  const AffinityGraph aff = road_affinities(graph, params);
  std::vector<std::vector<NodeId>> leaves = Partitioner(graph, aff, params, options).run();

  // Renumber by centroid: north first, then west first, then discovery order.
  std::vector<Point> centroid(leaves.size());
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    Point sum{};
    for (NodeId v : leaves[i]) sum = sum + graph.node(v);
    centroid[i] = (1.0 / static_cast<double>(leaves[i].size())) * sum;
  }
  std::vector<std::size_t> order(leaves.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::make_tuple(-centroid[a].y, centroid[a].x) <
           std::make_tuple(-centroid[b].y, centroid[b].x);
  });

  RegionAssignment out;
  out.region_of_node.assign(graph.node_count(), 0);
  std::vector<Point> final_centroid(leaves.size());
  for (std::size_t id = 0; id < order.size(); ++id) {
    for (NodeId v : leaves[order[id]]) out.region_of_node[v] = id;
    final_centroid[id] = centroid[order[id]];
  }
  out.region_of_edge.assign(graph.edge_count(), 0);
  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    const Edge& edge = graph.edge(e);
    const std::size_t ra = out.region_of_node[edge.a];
    const std::size_t rb = out.region_of_node[edge.b];
    if (ra == rb) {
      out.region_of_edge[e] = ra;
      continue;
    }
    // Boundary edge: nearer endpoint-region centroid to the arc midpoint.
    const Point mid = point_at(edge, edge.length_m / 2.0);
    const double da = distance(mid, final_centroid[ra]);
    const double db = distance(mid, final_centroid[rb]);
    out.region_of_edge[e] = (da < db || (da == db && ra < rb)) ? ra : rb;
  }
  out.regions = summarize_regions(graph, out.region_of_node, out.region_of_edge, leaves.size());
  return out;
}

std::size_t densest_region(const RegionAssignment& assignment) {
  const auto& regions = assignment.regions;
  if (regions.empty()) throw ValidationError("densest_region needs at least one region");
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    if (!(regions[i].hull_area_m2 > 0.0)) continue;
    if (!best || regions[i].road_density > regions[*best].road_density) best = i;
  }
  if (best) return *best;
  std::size_t most = 0;
  for (std::size_t i = 1; i < regions.size(); ++i) {
    if (regions[i].edges.size() > regions[most].edges.size()) most = i;
  }
  return most;
}

}  // namespace streetaddr
