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

#include "streetaddr/road_graph.h"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <tuple>

#include <fmt/format.h>

#include "streetaddr/error.h"

namespace streetaddr {

namespace {

constexpr double kOnBand = 1e-9;

bool polyline_less(const std::vector<Point>& l, const std::vector<Point>& r) {
  return std::lexicographical_compare(l.begin(), l.end(), r.begin(), r.end(),
                                      [](Point a, Point b) {
                                        return std::tie(a.x, a.y) < std::tie(b.x, b.y);
                                      });
}

void drop_repeated_vertices(std::vector<Point>& pts) {
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

}  // namespace

double convex_hull_area(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(),
            [](Point a, Point b) { return std::tie(a.x, a.y) < std::tie(b.x, b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return 0.0;
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(hull[k - 1] - hull[k - 2], pts[i - 1] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i - 1];
  }
  hull.resize(k - 1);
  double area = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    area += cross(hull[i], hull[(i + 1) % hull.size()]);
  }
  return std::abs(area) / 2.0;
}

RoadGraph::RoadGraph(std::vector<Point> nodes, std::vector<Edge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), incident_(nodes_.size()) {
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    Edge& e = edges_[i];
    if (e.a >= nodes_.size() || e.b >= nodes_.size()) {
      throw ValidationError(fmt::format("edge {} references a missing node", i));
    }
    if (e.polyline.size() < 2) {
      throw ValidationError(fmt::format("edge {} has fewer than two vertices", i));
    }
    if (!(e.polyline.front() == nodes_[e.a]) || !(e.polyline.back() == nodes_[e.b])) {
      throw ValidationError(fmt::format("edge {} polyline does not end on its nodes", i));
    }
    e.length_m = polyline_length(e.polyline);
    if (!(e.length_m > 0.0)) throw ValidationError(fmt::format("edge {} has zero length", i));
    incident_[e.a].push_back(static_cast<EdgeId>(i));
    if (e.b != e.a) incident_[e.b].push_back(static_cast<EdgeId>(i));
  }
  std::vector<std::size_t> order(edges_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    const Edge& a = edges_[l];
    const Edge& b = edges_[r];
    if (a.a != b.a) return a.a < b.a;
    if (a.b != b.b) return a.b < b.b;
    return polyline_less(a.polyline, b.polyline);
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    const Edge& a = edges_[order[i - 1]];
    const Edge& b = edges_[order[i]];
    if (a.a == b.a && a.b == b.b && a.polyline == b.polyline) {
      throw ValidationError(fmt::format("edges {} and {} are duplicates", order[i - 1], order[i]));
    }
  }
}

RoadGraph RoadGraph::assemble(std::vector<Point> nodes, std::vector<Edge> edges) {
  // Snap, clean, and split self-loops before ids are fixed.
  std::vector<Edge> kept;
  kept.reserve(edges.size());
  for (Edge& e : edges) {
    if (e.a >= nodes.size() || e.b >= nodes.size()) {
      throw ValidationError("assemble: edge references a missing node");
    }
    if (e.polyline.empty()) continue;
    e.polyline.front() = nodes[e.a];
    if (e.polyline.size() == 1) e.polyline.push_back(nodes[e.b]);
    e.polyline.back() = nodes[e.b];
    drop_repeated_vertices(e.polyline);
    if (e.polyline.size() < 2) continue;
    if (e.a == e.b) {
      if (e.polyline.size() < 3) continue;
      // Split the loop at the interior vertex nearest half its arc length.
      const double half = polyline_length(e.polyline) / 2.0;
      double acc = 0.0;
      std::size_t split = 1;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 1; i + 1 < e.polyline.size(); ++i) {
        acc += distance(e.polyline[i - 1], e.polyline[i]);
        if (std::abs(acc - half) < best) {
          best = std::abs(acc - half);
          split = i;
        }
      }
      const NodeId mid = static_cast<NodeId>(nodes.size());
      nodes.push_back(e.polyline[split]);
      Edge first{e.a, mid, {e.polyline.begin(), e.polyline.begin() + split + 1}, 0.0};
      Edge second{mid, e.b, {e.polyline.begin() + split, e.polyline.end()}, 0.0};
      kept.push_back(std::move(first));
      kept.push_back(std::move(second));
      continue;
    }
    kept.push_back(std::move(e));
  }

  // Keep only nodes with incident edges, ordered by (y, x).
  std::vector<bool> used(nodes.size(), false);
  for (const Edge& e : kept) used[e.a] = used[e.b] = true;
  std::vector<NodeId> order;
  for (NodeId i = 0; i < nodes.size(); ++i) {
    if (used[i]) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](NodeId l, NodeId r) {
    return std::tie(nodes[l].y, nodes[l].x) < std::tie(nodes[r].y, nodes[r].x);
  });
  std::vector<NodeId> remap(nodes.size(), 0);
  std::vector<Point> out_nodes;
  out_nodes.reserve(order.size());
  for (NodeId i = 0; i < order.size(); ++i) {
    remap[order[i]] = i;
    out_nodes.push_back(nodes[order[i]]);
  }

  for (Edge& e : kept) {
    e.a = remap[e.a];
    e.b = remap[e.b];
    if (e.a > e.b) {
      std::swap(e.a, e.b);
      std::reverse(e.polyline.begin(), e.polyline.end());
    }
  }
  std::sort(kept.begin(), kept.end(), [](const Edge& l, const Edge& r) {
    if (l.a != r.a) return l.a < r.a;
    if (l.b != r.b) return l.b < r.b;
    return polyline_less(l.polyline, r.polyline);
  });
  kept.erase(std::unique(kept.begin(), kept.end(),
                         [](const Edge& l, const Edge& r) {
                           return l.a == r.a && l.b == r.b && l.polyline == r.polyline;
                         }),
             kept.end());
  return RoadGraph(std::move(out_nodes), std::move(kept));
}

double RoadGraph::total_length_m() const {
  double s = 0.0;
  for (const Edge& e : edges_) s += e.length_m;
  return s;
}

double RoadGraph::mean_edge_length_m() const {
  return edges_.empty() ? 0.0 : total_length_m() / static_cast<double>(edges_.size());
}

const char* to_string(Side side) {
  switch (side) {
    case Side::Left: return "Left";
    case Side::Right: return "Right";
    case Side::On: return "On";
  }
  return "?";
}

Point point_at(const Edge& edge, double along_m) {
  if (!(along_m >= 0.0) || along_m > edge.length_m) {
    throw OutOfRange(fmt::format("along {} outside [0, {}]", along_m, edge.length_m));
  }
  const auto& pl = edge.polyline;
  double acc = 0.0;
  for (std::size_t i = 1; i < pl.size(); ++i) {
    const double seg = distance(pl[i - 1], pl[i]);
    if (along_m <= acc + seg && seg > 0.0) {
      const double t = std::clamp((along_m - acc) / seg, 0.0, 1.0);
      return pl[i - 1] + t * (pl[i] - pl[i - 1]);
    }
    acc += seg;
  }
  return pl.back();
}

Point left_normal_at(const Edge& edge, double along_m) {
  const auto& pl = edge.polyline;
  double acc = 0.0;
  std::size_t k = pl.size() - 2;
  for (std::size_t i = 1; i < pl.size(); ++i) {
    const double seg = distance(pl[i - 1], pl[i]);
    if (along_m < acc + seg) {
      k = i - 1;
      break;
    }
    acc += seg;
  }
  const Point d = pl[k + 1] - pl[k];
  const double n = norm(d);
  return {-d.y / n, d.x / n};
}

EdgeProjection project_onto_edge(const Edge& edge, Point p) {
  const auto& pl = edge.polyline;
  EdgeProjection best;
  best.distance = std::numeric_limits<double>::infinity();
  double acc = 0.0;
  for (std::size_t i = 1; i < pl.size(); ++i) {
    const Point a = pl[i - 1];
    const Point b = pl[i];
    const double seg = distance(a, b);
    const double t = project_to_segment(a, b, p);
    const Point q = a + t * (b - a);
    const double d = distance(p, q);
    if (d < best.distance) {
      best.distance = d;
      best.along_m = std::min(acc + t * seg, edge.length_m);
      best.segment = i - 1;
      const double signed_dist = cross(b - a, p - a) / seg;
      best.side = std::abs(signed_dist) < kOnBand ? Side::On
                  : signed_dist > 0.0            ? Side::Left
                                                 : Side::Right;
    }
    acc += seg;
  }
  return best;
}

Side side_of(const Edge& edge, Point p) { return project_onto_edge(edge, p).side; }

}  // namespace streetaddr
