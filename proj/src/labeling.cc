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

#include "streetaddr/labeling.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

#include <fmt/format.h>

#include "streetaddr/error.h"

namespace streetaddr {

std::string encode_base26(std::uint64_t value) {
  std::string out;
  std::uint64_t n = value + 1;
  if (n == 0) {  // value was UINT64_MAX; peel one digit without overflow
    out.push_back(static_cast<char>('A' + (value % 26)));
    n = value / 26;
  }
  while (n > 0) {
    --n;
    out.push_back(static_cast<char>('A' + n % 26));
    n /= 26;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::uint64_t decode_base26(std::string_view letters) {
  if (letters.empty()) throw ParseError("empty letter sequence");
  // Holds value + 1, which needs one bit more than the result.
  constexpr unsigned __int128 kLimit =
      static_cast<unsigned __int128>(std::numeric_limits<std::uint64_t>::max()) + 1;
  unsigned __int128 n = 0;
  for (char c : letters) {
    if (c < 'A' || c > 'Z') throw ParseError(fmt::format("invalid letter '{}'", c));
    n = n * 26 + static_cast<unsigned>(c - 'A') + 1;
    if (n > kLimit) throw ParseError(fmt::format("letters '{}' overflow", letters));
  }
  return static_cast<std::uint64_t>(n - 1);
}

std::vector<RegionLabel> label_regions(const RegionAssignment& assignment, std::size_t densest) {
  const auto& regions = assignment.regions;
  std::vector<RegionLabel> labels(regions.size());
  if (regions.empty()) return labels;
  const Point center = regions.at(densest).centroid;
  labels[densest] = {'C', 0};

  std::map<char, std::vector<std::tuple<double, std::size_t>>> quadrants;
  for (std::size_t r = 0; r < regions.size(); ++r) {
    if (r == densest) continue;
    const Point d = regions[r].centroid - center;
    const double b = bearing_deg(d);
    const char q = (b >= 315.0 || b < 45.0) ? 'N' : b < 135.0 ? 'E' : b < 225.0 ? 'S' : 'W';
    quadrants[q].emplace_back(norm(d), r);
  }
  for (auto& [q, members] : quadrants) {
    std::sort(members.begin(), members.end());
    for (std::size_t i = 0; i < members.size(); ++i) {
      labels[std::get<1>(members[i])] = {q, i};
    }
  }
  return labels;
}

const char* to_string(Orientation o) { return o == Orientation::NS ? "NS" : "EW"; }

double chord_bearing_deg(const Edge& edge) {
  Point d = edge.polyline.back() - edge.polyline.front();
  if (d.x < 0.0 || (d.x == 0.0 && d.y < 0.0)) d = -1.0 * d;
  // d now points into the eastern half plane, bearing in [0, 180].
  const double b = bearing_deg(d);
  return b >= 180.0 ? 0.0 : b;
}

Orientation orient_road(const Edge& edge) {
  const double b = chord_bearing_deg(edge);
  return (b >= 45.0 && b < 135.0) ? Orientation::EW : Orientation::NS;
}

std::map<EdgeId, RoadName> number_roads(const RoadGraph& graph, const std::vector<EdgeId>& edges,
                                        const std::string& region_label) {
  std::vector<std::tuple<double, EdgeId>> ns, ew;
  for (EdgeId e : edges) {
    const Edge& edge = graph.edge(e);
    const Point mid = point_at(edge, edge.length_m / 2.0);
    if (orient_road(edge) == Orientation::NS) {
      ns.emplace_back(mid.x, e);
    } else {
      ew.emplace_back(-mid.y, e);
    }
  }
  std::sort(ns.begin(), ns.end());
  std::sort(ew.begin(), ew.end());
  std::map<EdgeId, RoadName> out;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    out[std::get<1>(ns[i])] = {region_label, 2 * i + 1, Orientation::NS};
  }
  for (std::size_t i = 0; i < ew.size(); ++i) {
    out[std::get<1>(ew[i])] = {region_label, 2 * i + 2, Orientation::EW};
  }
  return out;
}

std::uint64_t house_number(double along_m, Side side) {
  if (!(along_m >= 0.0)) throw ValidationError("along_m must be nonnegative");
  const auto i = static_cast<std::uint64_t>(std::floor(along_m / kMarkerSpacingM));
  return 2 * i + (side == Side::Right ? 1 : 0);
}

std::string block_letter(double offset_m) {
  if (!(offset_m >= 0.0)) throw ValidationError("offset_m must be nonnegative");
  return encode_base26(static_cast<std::uint64_t>(std::floor(offset_m / kBlockStepM)));
}

bool needs_reversal(const RoadGraph& graph, EdgeId id) {
  const Edge& e = graph.edge(id);
  const Point pa = graph.node(e.a);
  const Point pb = graph.node(e.b);
  const bool ns = orient_road(e) == Orientation::NS;
  const double ka = ns ? pa.y : pa.x;
  const double kb = ns ? pb.y : pb.x;
  if (kb != ka) return kb < ka;
  return e.b < e.a;
}

}  // namespace streetaddr
