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

#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "streetaddr/error.h"
#include "streetaddr/road_graph.h"
#include "streetaddr/spatial_index.h"
#include "support/fixtures.h"

namespace streetaddr {
namespace {

Edge straight(Point a, Point b) { return {0, 1, {a, b}, 0.0}; }

// Brute force over every sub-segment of every edge; smaller edge id on ties.
struct Nearest {
  EdgeId edge = 0;
  double distance = std::numeric_limits<double>::infinity();
};
Nearest brute_nearest(const RoadGraph& g, Point p) {
  Nearest best;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& pl = g.edge(e).polyline;
    for (std::size_t i = 0; i + 1 < pl.size(); ++i) {
      const Point d = pl[i + 1] - pl[i];
      double t = ((p.x - pl[i].x) * d.x + (p.y - pl[i].y) * d.y) / (d.x * d.x + d.y * d.y);
      t = std::clamp(t, 0.0, 1.0);
      const double dist = std::hypot(p.x - (pl[i].x + t * d.x), p.y - (pl[i].y + t * d.y));
      if (dist < best.distance) best = {e, dist};
    }
  }
  return best;
}

RoadGraph winding_graph() {
  // Mixed geometry: a bent road, a diagonal, and a long straight.
  std::vector<Point> nodes = {{0, 0}, {300, 40}, {120, 260}, {-80, 150}, {400, 300}};
  std::vector<Edge> edges = {
      {0, 1, {{0, 0}, {60, 80}, {140, -20}, {300, 40}}, 0.0},
      {1, 2, {{300, 40}, {120, 260}}, 0.0},
      {2, 3, {{120, 260}, {40, 200}, {0, 230}, {-80, 150}}, 0.0},
      {3, 0, {{-80, 150}, {0, 0}}, 0.0},
      {1, 4, {{300, 40}, {350, 120}, {330, 200}, {400, 300}}, 0.0},
      {0, 2, {{0, 0}, {120, 260}}, 0.0},
  };
  return RoadGraph::assemble(std::move(nodes), std::move(edges));
}

TEST(RoadGraph, ConstructorValidates) {
  const std::vector<Point> nodes = {{0, 0}, {10, 0}};
  EXPECT_NO_THROW(RoadGraph(nodes, {straight({0, 0}, {10, 0})}));
  EXPECT_THROW(RoadGraph(nodes, {{0, 2, {{0, 0}, {10, 0}}, 0.0}}), ValidationError);
  EXPECT_THROW(RoadGraph(nodes, {{0, 1, {{0, 0}}, 0.0}}), ValidationError);
  EXPECT_THROW(RoadGraph(nodes, {straight({0, 0}, {10, 1})}), ValidationError);
  EXPECT_THROW(RoadGraph({{0, 0}, {0, 0}}, {straight({0, 0}, {0, 0})}), ValidationError);
  EXPECT_THROW(RoadGraph(nodes, {straight({0, 0}, {10, 0}), straight({0, 0}, {10, 0})}),
               ValidationError);
}

TEST(RoadGraph, LengthRecomputed) {
  const RoadGraph g({{0, 0}, {3, 4}}, {{0, 1, {{0, 0}, {3, 4}}, 99.0}});
  EXPECT_DOUBLE_EQ(g.edge(0).length_m, 5.0);
}

TEST(RoadGraph, AssembleSortsAndOrients) {
  const RoadGraph g = RoadGraph::assemble({{5, 5}, {0, 0}, {9, 0}},
                                          {{0, 1, {{5, 5}, {0, 0}}, 0.0},
                                           {2, 0, {{9, 0}, {5, 5}}, 0.0},
                                           {1, 0, {{0, 0}, {5, 5}}, 0.0}});
  EXPECT_EQ(g.nodes(), (std::vector<Point>{{0, 0}, {9, 0}, {5, 5}}));
  ASSERT_EQ(g.edge_count(), 2u);  // the reversed duplicate is gone
  for (const Edge& e : g.edges()) {
    EXPECT_LT(e.a, e.b);
    EXPECT_EQ(e.polyline.front(), g.node(e.a));
  }
}

TEST(RoadGraph, AssembleSplitsSelfLoops) {
  const RoadGraph g = RoadGraph::assemble(
      {{0, 0}}, {{0, 0, {{0, 0}, {10, 0}, {10, 10}, {0, 10}, {0, 0}}, 0.0}});
  EXPECT_EQ(g.node_count(), 2u);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_NEAR(g.total_length_m(), 40.0, 1e-12);
}

TEST(RoadGraph, AssembleDropsIsolatedNodes) {
  const RoadGraph g = RoadGraph::assemble({{0, 0}, {1, 0}, {50, 50}}, {straight({0, 0}, {1, 0})});
  EXPECT_EQ(g.node_count(), 2u);
}

TEST(PointAt, Examples) {
  const Edge e = straight({0, 0}, {0, 100});
  const RoadGraph g({{0, 0}, {0, 100}}, {e});
  EXPECT_EQ(point_at(g.edge(0), 0.0), (Point{0, 0}));
  EXPECT_EQ(point_at(g.edge(0), 25.0), (Point{0, 25}));
  const RoadGraph l({{0, 0}, {60, 80}}, {{0, 1, {{0, 0}, {60, 0}, {60, 80}}, 0.0}});
  const Point p = point_at(l.edge(0), 100.0);
  EXPECT_NEAR(p.x, 60.0, 1e-12);
  EXPECT_NEAR(p.y, 40.0, 1e-12);
  EXPECT_THROW(point_at(g.edge(0), -0.1), OutOfRange);
  EXPECT_THROW(point_at(g.edge(0), 100.1), OutOfRange);
  EXPECT_EQ(point_at(g.edge(0), 100.0), (Point{0, 100}));
}

TEST(SideOf, Examples) {
  const RoadGraph g({{0, 0}, {0, 100}}, {straight({0, 0}, {0, 100})});
  EXPECT_EQ(side_of(g.edge(0), {-3, 50}), Side::Left);
  EXPECT_EQ(side_of(g.edge(0), {3, 50}), Side::Right);
  EXPECT_EQ(side_of(g.edge(0), {0, 50}), Side::On);
}

TEST(SideOf, NearCornerMatchesNearestSubSegment) {
  const RoadGraph g({{0, 0}, {10, 10}}, {{0, 1, {{0, 0}, {10, 0}, {10, 10}}, 0.0}});
  // Inside the corner: nearer the second leg, which heads north; x < 10 is Left.
  EXPECT_EQ(side_of(g.edge(0), {9.5, 5}), Side::Left);
  // Below the first leg, heading east: Right.
  EXPECT_EQ(side_of(g.edge(0), {5, -1}), Side::Right);
  // Outside the corner past both legs.
  EXPECT_EQ(side_of(g.edge(0), {11, -1}), Side::Right);
}

TEST(Locate, Examples) {
  const RoadGraph g({{0, 0}, {0, 100}}, {straight({0, 0}, {0, 100})});
  const SpatialIndex idx(g);
  const LinearRef on = idx.locate({0, 30});
  EXPECT_DOUBLE_EQ(on.offset_m, 0.0);
  EXPECT_EQ(on.side, Side::Left);
  const LinearRef left = idx.locate({-7, 50});
  EXPECT_DOUBLE_EQ(left.along_m, 50.0);
  EXPECT_DOUBLE_EQ(left.offset_m, 7.0);
  EXPECT_EQ(left.side, Side::Left);
}

TEST(Locate, TieGoesToSmallerEdgeId) {
  const RoadGraph g = RoadGraph::assemble(
      {{0, 0}, {0, 100}, {100, 0}, {100, 100}},
      {{0, 1, {{0, 0}, {0, 100}}, 0.0}, {2, 3, {{100, 0}, {100, 100}}, 0.0}});
  const SpatialIndex idx(g);
  const LinearRef r = idx.locate({50, 50});
  EXPECT_EQ(r.edge, 0u);
  EXPECT_DOUBLE_EQ(r.offset_m, 50.0);
}

TEST(Locate, CellSizeRule) {
  EXPECT_DOUBLE_EQ(SpatialIndex(testing::grid_city_graph()).cell_size(), 25.0);
  EXPECT_DOUBLE_EQ(SpatialIndex(testing::grid_city_graph(400.0)).cell_size(), 100.0);
}

TEST(Locate, MatchesBruteForceOnRandomPoints) {
  for (const RoadGraph& g : {testing::grid_city_graph(), winding_graph(), testing::two_cliques_graph()}) {
    const SpatialIndex idx(g);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-150.0, 550.0);
    for (int i = 0; i < 1000; ++i) {
      const Point p{u(rng), u(rng)};
      const LinearRef r = idx.locate(p);
      const Nearest b = brute_nearest(g, p);
      ASSERT_NEAR(r.offset_m, b.distance, 1e-9);
      ASSERT_EQ(r.edge, b.edge);
      ASSERT_GE(r.along_m, 0.0);
      ASSERT_LE(r.along_m, g.edge(r.edge).length_m);
    }
  }
}

TEST(Locate, ReconstructsPointFromLinearRef) {
  const RoadGraph g = winding_graph();
  const SpatialIndex idx(g);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-100.0, 450.0);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const Point p{u(rng), u(rng)};
    const LinearRef r = idx.locate(p);
    const Edge& e = g.edge(r.edge);
    // Skip points whose nearest spot is a polyline vertex.
    bool at_vertex = false;
    double acc = 0.0;
    for (std::size_t k = 0; k < e.polyline.size(); ++k) {
      if (k > 0) acc += distance(e.polyline[k - 1], e.polyline[k]);
      if (std::abs(acc - r.along_m) < 1e-6) at_vertex = true;
    }
    if (at_vertex) continue;
    const double sign = r.side == Side::Left ? 1.0 : -1.0;
    const Point q = point_at(e, r.along_m) + (sign * r.offset_m) * left_normal_at(e, r.along_m);
    EXPECT_LT(distance(p, q), 1e-6);
    ++checked;
  }
  EXPECT_GT(checked, 500);
}

TEST(ConvexHull, AreaAndDegenerateCases) {
  EXPECT_DOUBLE_EQ(convex_hull_area({{0, 0}, {10, 0}, {10, 10}, {0, 10}, {5, 5}}), 100.0);
  EXPECT_DOUBLE_EQ(convex_hull_area({{0, 0}, {1, 1}, {2, 2}}), 0.0);
  EXPECT_DOUBLE_EQ(convex_hull_area({{0, 0}, {1, 1}}), 0.0);
}

}  // namespace
}  // namespace streetaddr
