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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "streetaddr/error.h"
#include "streetaddr/labeling.h"
#include "support/fixtures.h"

namespace streetaddr {
namespace {

// Spreadsheet-column numbering written out independently: 1-based n.
std::string oracle_letters(std::uint64_t j) {
  std::string s;
  for (std::uint64_t n = j + 1; n > 0; n = (n - 1) / 26) {
    s.insert(s.begin(), static_cast<char>('A' + (n - 1) % 26));
  }
  return s;
}

RegionAssignment centroids(const std::vector<Point>& points) {
  RegionAssignment a;
  for (Point p : points) {
    Region r;
    r.centroid = p;
    a.regions.push_back(r);
  }
  return a;
}

std::vector<std::string> texts(const std::vector<RegionLabel>& labels) {
  std::vector<std::string> out;
  for (const auto& l : labels) out.push_back(l.text());
  return out;
}

Edge chord(Point a, Point b) { return {0, 1, {a, b}, distance(a, b)}; }

TEST(Base26, KnownValues) {
  EXPECT_EQ(encode_base26(0), "A");
  EXPECT_EQ(encode_base26(25), "Z");
  EXPECT_EQ(encode_base26(26), "AA");
  EXPECT_EQ(encode_base26(51), "AZ");
  EXPECT_EQ(encode_base26(52), "BA");
  EXPECT_EQ(encode_base26(701), "ZZ");
  EXPECT_EQ(encode_base26(702), "AAA");
}

TEST(Base26, OracleAndInverse) {
  for (std::uint64_t j = 0; j <= 20000; ++j) {
    const std::string s = encode_base26(j);
    ASSERT_EQ(s, oracle_letters(j));
    ASSERT_EQ(decode_base26(s), j);
  }
  const auto max = std::numeric_limits<std::uint64_t>::max();
  EXPECT_EQ(decode_base26(encode_base26(max)), max);
}

TEST(Base26, DecodeRejects) {
  EXPECT_THROW(decode_base26(""), ParseError);
  EXPECT_THROW(decode_base26("a"), ParseError);
  EXPECT_THROW(decode_base26("A1"), ParseError);
  EXPECT_THROW(decode_base26(std::string(20, 'Z')), ParseError);
}

TEST(LabelRegions, SingleRegion) {
  EXPECT_EQ(texts(label_regions(centroids({{3, 4}}), 0)), (std::vector<std::string>{"CA"}));
}

TEST(LabelRegions, FourCompassNeighbors) {
  const auto a = centroids({{0, 1000}, {1000, 0}, {0, 0}, {0, -1000}, {-1000, 0}});
  EXPECT_EQ(texts(label_regions(a, 2)), (std::vector<std::string>{"NA", "EA", "CA", "SA", "WA"}));
}

TEST(LabelRegions, DistanceOrderWithinQuadrant) {
  const auto a = centroids({{0, 3000}, {0, 0}, {100, 1000}});
  EXPECT_EQ(texts(label_regions(a, 1)), (std::vector<std::string>{"NB", "CA", "NA"}));
}

TEST(LabelRegions, QuadrantBoundariesAndTies) {
  // Bearings exactly 45, 135, 225, 315 fall into E, S, W, N.
  const auto a = centroids({{0, 0}, {10, 10}, {10, -10}, {-10, -10}, {-10, 10}});
  EXPECT_EQ(texts(label_regions(a, 0)), (std::vector<std::string>{"CA", "EA", "SA", "WA", "NA"}));
  // Equal distance in one quadrant: smaller region id first.
  const auto b = centroids({{5, 100}, {0, 0}, {-5, 100}});
  EXPECT_EQ(texts(label_regions(b, 1)), (std::vector<std::string>{"NA", "CA", "NB"}));
}

TEST(LabelRegions, UniqueLabels) {
  std::vector<Point> pts;
  for (int i = 0; i < 40; ++i) pts.push_back({std::cos(i * 0.7) * (100 + i), std::sin(i * 0.7) * (100 + i)});
  pts.push_back({0, 0});
  const auto labels = texts(label_regions(centroids(pts), pts.size() - 1));
  EXPECT_EQ(std::set<std::string>(labels.begin(), labels.end()).size(), labels.size());
}

TEST(OrientRoad, Examples) {
  const double t10 = 10.0 * M_PI / 180.0;
  EXPECT_EQ(orient_road(chord({0, 0}, {100 * std::sin(t10), 100 * std::cos(t10)})), Orientation::NS);
  EXPECT_EQ(orient_road(chord({0, 0}, {100, 0})), Orientation::EW);
  EXPECT_EQ(orient_road(chord({0, 0}, {7, 7})), Orientation::EW);
  EXPECT_EQ(orient_road(chord({7, 7}, {0, 0})), Orientation::EW);
  EXPECT_EQ(orient_road(chord({0, 0}, {7, -7})), Orientation::NS);  // 135
  EXPECT_EQ(orient_road(chord({0, 0}, {-7, 7})), Orientation::NS);  // 315 folds to 135
  EXPECT_EQ(orient_road(chord({0, 0}, {0, -5})), Orientation::NS);
}

TEST(OrientRoad, ReversalInvariant) {
  for (int deg = 0; deg < 360; ++deg) {
    const double t = deg * M_PI / 180.0;
    const Point b{50 * std::sin(t), 50 * std::cos(t)};
    EXPECT_EQ(orient_road(chord({0, 0}, b)), orient_road(chord(b, {0, 0}))) << deg;
  }
}

TEST(NumberRoads, GridRegion) {
  // Square block: west and east sides NS, north and south sides EW.
  const RoadGraph g = testing::cycle4_graph(100.0);
  std::vector<EdgeId> all(g.edge_count());
  std::iota(all.begin(), all.end(), 0);
  const auto names = number_roads(g, all, "CA");
  ASSERT_EQ(names.size(), 4u);
  for (const auto& [e, n] : names) {
    const Point mid = point_at(g.edge(e), g.edge(e).length_m / 2);
    EXPECT_EQ(n.region, "CA");
    if (n.orientation == Orientation::NS) {
      EXPECT_EQ(n.number, mid.x < 50 ? 1u : 3u);
    } else {
      EXPECT_EQ(n.number, mid.y > 50 ? 2u : 4u);
    }
  }
}

TEST(NumberRoads, SingleAndEmpty) {
  const RoadGraph g({{0, 0}, {0, 50}}, {chord({0, 0}, {0, 50})});
  const auto names = number_roads(g, {0}, "NB");
  ASSERT_EQ(names.size(), 1u);
  EXPECT_EQ(names.at(0).text(), "NB1");
  EXPECT_TRUE(number_roads(g, {}, "CA").empty());
}

TEST(NumberRoads, ParityAndNoGapsOnGridCity) {
  const RoadGraph g = testing::grid_city_graph();
  std::vector<EdgeId> all(g.edge_count());
  std::iota(all.begin(), all.end(), 0);
  std::set<std::uint64_t> odd, even;
  for (const auto& [e, n] : number_roads(g, all, "CA")) {
    EXPECT_EQ(n.number % 2 == 1, n.orientation == Orientation::NS);
    (n.number % 2 ? odd : even).insert(n.number);
  }
  EXPECT_EQ(odd, (std::set<std::uint64_t>{1, 3, 5, 7, 9, 11}));
  EXPECT_EQ(even, (std::set<std::uint64_t>{2, 4, 6, 8, 10, 12}));
}

TEST(HouseNumber, Examples) {
  EXPECT_EQ(house_number(0.0, Side::Left), 0u);
  EXPECT_EQ(house_number(12.0, Side::Right), 5u);
  EXPECT_EQ(house_number(1787.5, Side::Right), 715u);
  EXPECT_EQ(house_number(4.999, Side::Left), 0u);
  EXPECT_EQ(house_number(5.0, Side::Left), 2u);
}

TEST(HouseNumber, ParityMatchesSide) {
  for (double a = 0.0; a < 500.0; a += 0.7) {
    EXPECT_EQ(house_number(a, Side::Left) % 2, 0u);
    EXPECT_EQ(house_number(a, Side::Right) % 2, 1u);
  }
}

TEST(BlockLetter, Examples) {
  EXPECT_EQ(block_letter(0.0), "A");
  EXPECT_EQ(block_letter(17.3), "D");
  EXPECT_EQ(block_letter(132.0), "AA");
  EXPECT_THROW(block_letter(-1.0), ValidationError);
}

TEST(BlockLetter, OracleOverTenThousandBins) {
  for (std::uint64_t j = 0; j <= 10000; ++j) {
    ASSERT_EQ(block_letter(5.0 * static_cast<double>(j)), oracle_letters(j)) << j;
  }
}

TEST(CanonicalOrigin, SouthOrWestEnd) {
  const RoadGraph g = RoadGraph::assemble(
      {{0, 0}, {0, 100}, {100, 100}},
      {chord({0, 100}, {0, 0}), {1, 2, {{0, 100}, {100, 100}}, 0}});
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    const Point start = needs_reversal(g, e) ? g.node(edge.b) : g.node(edge.a);
    const Point end = needs_reversal(g, e) ? g.node(edge.a) : g.node(edge.b);
    if (orient_road(edge) == Orientation::NS) {
      EXPECT_LT(start.y, end.y);
    } else {
      EXPECT_LT(start.x, end.x);
    }
  }
}

}  // namespace
}  // namespace streetaddr
