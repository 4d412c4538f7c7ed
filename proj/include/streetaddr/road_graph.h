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

#ifndef STREETADDR_ROAD_GRAPH_H_
#define STREETADDR_ROAD_GRAPH_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "streetaddr/geometry.h"

namespace streetaddr {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  NodeId a = 0;
  NodeId b = 0;
  std::vector<Point> polyline;  // polyline.front() == node a, back() == node b
  double length_m = 0.0;
};

// Intersections plus road segments. Immutable once constructed; the
// constructor validates every structural invariant and recomputes lengths.
class RoadGraph {
 public:
  RoadGraph() = default;
  RoadGraph(std::vector<Point> nodes, std::vector<Edge> edges);

  // Normalizes raw geometry into a RoadGraph with deterministic ids: nodes
  // sorted by (y, x), edge polylines oriented from the lower node id, edges
  // sorted by (a, b, geometry), duplicates and zero-length edges dropped.
  // Polyline endpoints are snapped onto their node coordinates.
  static RoadGraph assemble(std::vector<Point> nodes, std::vector<Edge> edges);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }

  const std::vector<Point>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  Point node(NodeId id) const { return nodes_.at(id); }
  const Edge& edge(EdgeId id) const { return edges_.at(id); }

  // Incident edge ids per node, ascending.
  const std::vector<EdgeId>& incident(NodeId id) const { return incident_.at(id); }
  std::size_t degree(NodeId id) const { return incident_.at(id).size(); }

  double total_length_m() const;
  double mean_edge_length_m() const;

 private:
  std::vector<Point> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> incident_;
};

enum class Side { Left, Right, On };

const char* to_string(Side side);

// Position on the network: meters along an edge from its first polyline
// vertex, plus perpendicular offset to one side.
struct LinearRef {
  EdgeId edge = 0;
  double along_m = 0.0;
  double offset_m = 0.0;
  Side side = Side::Left;  // Left or Right; on-centerline points report Left
};

// Point at arc length `along_m` from the edge origin. Throws OutOfRange
// outside [0, length_m].
Point point_at(const Edge& edge, double along_m);

// Unit left normal of the sub-segment containing arc length `along_m`.
Point left_normal_at(const Edge& edge, double along_m);

// Sign of the cross product at the sub-segment nearest `p`. Points within
// 1e-9 m of the centerline are On.
Side side_of(const Edge& edge, Point p);

// Nearest point on one edge, without any index. Exposed for brute-force
// checks and for the index's inner loop.
struct EdgeProjection {
  double distance = 0.0;
  double along_m = 0.0;
  std::size_t segment = 0;
  Side side = Side::On;
};
EdgeProjection project_onto_edge(const Edge& edge, Point p);

}  // namespace streetaddr

#endif  // STREETADDR_ROAD_GRAPH_H_
