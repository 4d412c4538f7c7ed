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

#include "streetaddr/osm.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <fmt/format.h>

#include "streetaddr/error.h"
#include "streetaddr/projection.h"

namespace streetaddr {

namespace {

namespace pt = boost::property_tree;

template <typename T>
T attribute(const pt::ptree& elem, const char* name, const char* tag) {
  const auto raw = elem.get_optional<std::string>(fmt::format("<xmlattr>.{}", name));
  if (!raw) throw ParseError(fmt::format("<{}> is missing attribute '{}'", tag, name));
  T v{};
  auto [ptr, ec] = std::from_chars(raw->data(), raw->data() + raw->size(), v);
  if (ec != std::errc() || ptr != raw->data() + raw->size()) {
    throw ParseError(fmt::format("<{}> attribute {}='{}' is not a number", tag, name, *raw));
  }
  return v;
}

OsmSubset subset_from_tree(const pt::ptree& doc) {
  const auto root = doc.get_child_optional("osm");
  if (!root) throw ParseError("missing <osm> root element");

  std::map<std::int64_t, LatLon> all_nodes;
  std::vector<OsmWay> ways;
  for (const auto& [tag, elem] : *root) {
    if (tag == "node") {
      const auto id = attribute<std::int64_t>(elem, "id", "node");
      all_nodes[id] = {attribute<double>(elem, "lat", "node"), attribute<double>(elem, "lon", "node")};
    } else if (tag == "way") {
      OsmWay way;
      way.id = attribute<std::int64_t>(elem, "id", "way");
      for (const auto& [child_tag, child] : elem) {
        if (child_tag == "nd") {
          way.refs.push_back(attribute<std::int64_t>(child, "ref", "nd"));
        } else if (child_tag == "tag") {
          const auto k = child.get_optional<std::string>("<xmlattr>.k");
          if (!k) throw ParseError("<tag> is missing attribute 'k'");
          way.tags[*k] = child.get<std::string>("<xmlattr>.v", "");
        }
      }
      if (way.tags.contains("highway")) ways.push_back(std::move(way));
    }
  }

  OsmSubset out;
  for (OsmWay& way : ways) {
    std::vector<std::int64_t> kept;
    for (auto ref : way.refs) {
      const auto it = all_nodes.find(ref);
      if (it == all_nodes.end()) {
        ++out.dropped_refs;
        continue;
      }
      kept.push_back(ref);
      out.nodes.emplace(ref, it->second);
    }
    way.refs = std::move(kept);
  }
  std::erase_if(ways, [](const OsmWay& w) { return w.refs.size() < 2; });
  std::sort(ways.begin(), ways.end(), [](const OsmWay& a, const OsmWay& b) { return a.id < b.id; });
  // Drop nodes only referenced by discarded ways.
  std::set<std::int64_t> used;
  for (const auto& w : ways) used.insert(w.refs.begin(), w.refs.end());
  std::erase_if(out.nodes, [&](const auto& kv) { return !used.contains(kv.first); });
  out.ways = std::move(ways);
  return out;
}

}  // namespace

OsmSubset parse_osm_string(const std::string& xml) {
  std::istringstream in(xml);
  pt::ptree doc;
  try {
    pt::read_xml(in, doc);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError(fmt::format("malformed OSM XML: {}", e.what()));
  } catch (const pt::ptree_error& e) {
    throw ParseError(fmt::format("malformed OSM XML: {}", e.what()));
  }
  return subset_from_tree(doc);
}

OsmSubset parse_osm(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError(fmt::format("cannot open {}", path.string()));
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_osm_string(ss.str());
}

OsmGraph to_graph(const OsmSubset& subset) {
  if (subset.ways.empty()) throw DegenerateInput("OSM data has no highway ways");

  LatLon anchor{};
  for (const auto& [id, ll] : subset.nodes) {
    anchor.lat += ll.lat;
    anchor.lon += ll.lon;
  }
  anchor.lat /= static_cast<double>(subset.nodes.size());
  anchor.lon /= static_cast<double>(subset.nodes.size());

  std::map<std::int64_t, std::size_t> way_count;
  for (const auto& w : subset.ways) {
    std::set<std::int64_t> distinct(w.refs.begin(), w.refs.end());
    for (auto id : distinct) ++way_count[id];
  }
  auto is_node = [&](const OsmWay& w, std::size_t i) {
    return i == 0 || i + 1 == w.refs.size() || way_count[w.refs[i]] >= 2;
  };

  std::map<std::int64_t, NodeId> node_ids;
  std::vector<Point> nodes;
  auto node_id = [&](std::int64_t osm_id) {
    auto [it, inserted] = node_ids.try_emplace(osm_id, static_cast<NodeId>(nodes.size()));
    if (inserted) nodes.push_back(project(anchor, subset.nodes.at(osm_id)));
    return it->second;
  };

  std::vector<Edge> edges;
  for (const auto& w : subset.ways) {
    Edge current;
    current.a = node_id(w.refs[0]);
    for (std::size_t i = 0; i < w.refs.size(); ++i) {
      current.polyline.push_back(project(anchor, subset.nodes.at(w.refs[i])));
      if (i == 0 || !is_node(w, i)) continue;
      current.b = node_id(w.refs[i]);
      edges.push_back(current);
      current = Edge{};
      current.a = node_id(w.refs[i]);
      current.polyline.push_back(project(anchor, subset.nodes.at(w.refs[i])));
    }
  }
  RoadGraph graph = RoadGraph::assemble(std::move(nodes), std::move(edges));
  if (graph.empty()) throw DegenerateInput("OSM highways collapse to zero-length geometry");
  return {std::move(graph), anchor};
}

}  // namespace streetaddr
