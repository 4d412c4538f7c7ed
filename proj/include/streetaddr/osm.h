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

#ifndef STREETADDR_OSM_H_
#define STREETADDR_OSM_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "streetaddr/raster.h"
#include "streetaddr/road_graph.h"

namespace streetaddr {

struct OsmWay {
  std::int64_t id = 0;
  std::vector<std::int64_t> refs;
  std::map<std::string, std::string> tags;
};

// Highway ways and the nodes they reference.
struct OsmSubset {
  std::map<std::int64_t, LatLon> nodes;
  std::vector<OsmWay> ways;  // ascending id
  std::size_t dropped_refs = 0;
};

// Keeps ways carrying any "highway" tag. References to absent nodes are
// dropped and counted; ways left with fewer than two nodes are discarded.
// Throws ParseError on malformed XML.
OsmSubset parse_osm(const std::filesystem::path& path);
OsmSubset parse_osm_string(const std::string& xml);

struct OsmGraph {
  RoadGraph graph;
  LatLon anchor;
};

// Projects about the centroid of all nodes. Way ends and vertices shared by
// two or more ways become graph nodes. Throws DegenerateInput when there are
// no ways.
OsmGraph to_graph(const OsmSubset& subset);

}  // namespace streetaddr

#endif  // STREETADDR_OSM_H_
