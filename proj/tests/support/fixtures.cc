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

#include "support/fixtures.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>

#include <unistd.h>

namespace streetaddr::testing {

double distance_to_segments(const std::vector<Segment>& segments, Point p) {
  double best = INFINITY;
  for (const Segment& s : segments) {
    const Point d = s.b - s.a;
    const double len2 = d.x * d.x + d.y * d.y;
    double t = len2 > 0 ? ((p.x - s.a.x) * d.x + (p.y - s.a.y) * d.y) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double dx = p.x - (s.a.x + t * d.x);
    const double dy = p.y - (s.a.y + t * d.y);
    best = std::min(best, std::sqrt(dx * dx + dy * dy));
  }
  return best;
}

ConfidenceRaster render_roads(const std::vector<Segment>& segments, const GeoTransform& transform,
                              int width, int height, double half_width_m, double falloff_m) {
  std::vector<std::uint8_t> values(static_cast<std::size_t>(width) * height, 0);
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      const Point w = transform.pixel_to_world({static_cast<double>(c), static_cast<double>(r)});
      const double d = distance_to_segments(segments, w);
      double v = 0.0;
      if (d <= half_width_m) {
        v = 255.0;
      } else if (d < half_width_m + falloff_m) {
        v = 255.0 * (1.0 - (d - half_width_m) / falloff_m);
      }
      values[static_cast<std::size_t>(r) * width + c] = static_cast<std::uint8_t>(std::lround(v));
    }
  }
  return ConfidenceRaster(width, height, std::move(values), transform);
}

std::vector<Segment> grid_city_segments(double spacing) {
  std::vector<Segment> segs;
  for (int i = 0; i < 3; ++i) {
    const double v = i * spacing;
    segs.push_back({{v, 0.0}, {v, 2 * spacing}});
    segs.push_back({{0.0, v}, {2 * spacing, v}});
  }
  return segs;
}

ConfidenceRaster grid_city_raster() {
  const GeoTransform t(0.5, 0.5, -20.0, 220.0);
  return render_roads(grid_city_segments(), t, 481, 481);
}

RoadGraph grid_city_graph(double spacing) {
  std::vector<Point> nodes;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) nodes.push_back({c * spacing, r * spacing});
  }
  std::vector<Edge> edges;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      const NodeId id = static_cast<NodeId>(r * 3 + c);
      if (c < 2) edges.push_back({id, id + 1, {nodes[id], nodes[id + 1]}, 0.0});
      if (r < 2) edges.push_back({id, id + 3, {nodes[id], nodes[id + 3]}, 0.0});
    }
  }
  return RoadGraph::assemble(std::move(nodes), std::move(edges));
}

RoadGraph two_cliques_graph() {
  std::vector<Point> nodes = {{0, 0},   {10, 0},  {0, 10},  {10, 10},
                              {40, 0},  {50, 0},  {40, 10}, {50, 10}};
  std::vector<Edge> edges;
  for (NodeId base : {0u, 4u}) {
    for (NodeId i = 0; i < 4; ++i) {
      for (NodeId j = i + 1; j < 4; ++j) {
        edges.push_back({base + i, base + j, {nodes[base + i], nodes[base + j]}, 0.0});
      }
    }
  }
  edges.push_back({1, 4, {nodes[1], nodes[4]}, 0.0});
  return RoadGraph::assemble(std::move(nodes), std::move(edges));
}

RoadGraph path_graph(int n, double spacing) {
  std::vector<Point> nodes;
  for (int i = 0; i < n; ++i) nodes.push_back({i * spacing, 0.0});
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) {
    edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(i + 1), {nodes[i], nodes[i + 1]},
                     0.0});
  }
  return RoadGraph::assemble(std::move(nodes), std::move(edges));
}

RoadGraph cycle4_graph(double side) {
  std::vector<Point> nodes = {{0, 0}, {side, 0}, {side, side}, {0, side}};
  std::vector<Edge> edges;
  for (NodeId i = 0; i < 4; ++i) {
    const NodeId j = (i + 1) % 4;
    edges.push_back({i, j, {nodes[i], nodes[j]}, 0.0});
  }
  return RoadGraph::assemble(std::move(nodes), std::move(edges));
}

EdgeId brute_nearest_edge(const RoadGraph& graph, Point p, double* distance_out) {
  EdgeId best = 0;
  double best_d = INFINITY;
  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    const auto& pl = graph.edge(e).polyline;
    std::vector<Segment> segs;
    for (std::size_t i = 0; i + 1 < pl.size(); ++i) segs.push_back({pl[i], pl[i + 1]});
    const double d = distance_to_segments(segs, p);
    if (d < best_d) {
      best_d = d;
      best = e;
    }
  }
  if (distance_out != nullptr) *distance_out = best_d;
  return best;
}

RoundTripReport geocode_round_trip(const AddressMap& map, int blocks) {
  RoundTripReport report;
  const RoadGraph& g = map.graph();
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const double len = g.edge(e).length_m;
    for (std::uint64_t i = 0; 5.0 * static_cast<double>(i) + 2.5 <= len; ++i) {
      for (std::uint64_t side = 0; side < 2; ++side) {
        for (int j = 0; j < blocks; ++j) {
          AddressRecord rec;
          rec.house_number = 2 * i + side;
          rec.block = std::string(1, static_cast<char>('A' + j));
          rec.region = map.road_name(e).region;
          rec.road_number = map.road_name(e).number;
          rec.city = map.identity().city;
          rec.state_code = map.identity().state_code;
          rec.country_code = map.identity().country_code;
          rec.version_year = map.identity().version_year;
          ++report.units;
          const Point p = map.geocode(rec).xy;
          if (brute_nearest_edge(g, p) != e) continue;
          ++report.eligible;
          const AddressRecord back = map.reverse_geocode(p);
          if (back == rec) {
            ++report.matched;
          } else {
            report.mismatches.push_back(format_address(rec) + " -> " + format_address(back));
          }
        }
      }
    }
  }
  return report;
}

std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() /
             ("streetaddr_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

std::string read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace streetaddr::testing
