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

#ifndef STREETADDR_TESTS_SUPPORT_FIXTURES_H_
#define STREETADDR_TESTS_SUPPORT_FIXTURES_H_

#include <filesystem>
#include <string>
#include <vector>

#include "streetaddr/geocoder.h"
#include "streetaddr/raster.h"
#include "streetaddr/road_graph.h"

namespace streetaddr::testing {

struct Segment {
  Point a;
  Point b;
};

// Distance from p to the closest of `segments`.
double distance_to_segments(const std::vector<Segment>& segments, Point p);

// Draws roads as anti-aliased bands: confidence 255 within half_width_m of a
// centerline, falling linearly to 0 over falloff_m.
ConfidenceRaster render_roads(const std::vector<Segment>& segments, const GeoTransform& transform,
                              int width, int height, double half_width_m = 1.25,
                              double falloff_m = 1.0);

// Three north-south and three east-west roads, `spacing` apart, meeting at
// nine intersections with (0,0) at the south-west corner.
std::vector<Segment> grid_city_segments(double spacing = 100.0);

// Grid city rasterized at 0.5 m/px with a 20 m margin.
ConfidenceRaster grid_city_raster();

// The ideal grid-city graph: 9 nodes, 12 straight 100 m edges.
RoadGraph grid_city_graph(double spacing = 100.0);

// Two 4-cliques (squares with both diagonals) joined by one bridge edge.
RoadGraph two_cliques_graph();

// Straight-line graph through the given points, one edge per consecutive pair.
RoadGraph path_graph(int nodes, double spacing = 10.0);

// Four nodes on a square, four sides.
RoadGraph cycle4_graph(double side = 10.0);

// Nearest edge to p by brute force over every sub-segment, smaller id on ties.
EdgeId brute_nearest_edge(const RoadGraph& graph, Point p, double* distance_out = nullptr);

// Every address unit within `blocks` blocks of every road whose cell centre
// lies on the road. A unit is eligible when its geocoded point is nearest its
// own road; it matches when reverse geocoding returns the same address.
struct RoundTripReport {
  std::size_t units = 0;
  std::size_t eligible = 0;
  std::size_t matched = 0;
  std::vector<std::string> mismatches;
};
RoundTripReport geocode_round_trip(const AddressMap& map, int blocks = 2);

// Scratch directory unique to the running test binary.
std::filesystem::path temp_dir(const std::string& name);

std::string read_bytes(const std::filesystem::path& path);

}  // namespace streetaddr::testing

#endif  // STREETADDR_TESTS_SUPPORT_FIXTURES_H_
