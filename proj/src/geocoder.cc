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

#include "streetaddr/geocoder.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "streetaddr/error.h"
#include "streetaddr/projection.h"

namespace streetaddr {

void validate(const MapIdentity& identity) {
  AddressRecord probe;
  probe.block = "A";
  probe.region = "CA";
  probe.city = identity.city;
  probe.state_code = identity.state_code;
  probe.country_code = identity.country_code;
  probe.version_year = identity.version_year;
  validate(probe);
}

AddressMap AddressMap::build(const RoadGraph& graph, const MapConfig& config) {
  if (graph.empty()) throw DegenerateInput("road graph has no edges");
  validate(config.identity);
  config.partition.validate();

  AddressMap map;
  map.identity_ = config.identity;
  map.anchor_ = config.anchor;
  map.assignment_ = partition(graph, config.partition, config.bisect);

  // Re-orient every edge so meter 0 sits at its canonical origin.
  std::vector<Edge> edges = graph.edges();
  for (EdgeId e = 0; e < edges.size(); ++e) {
    if (!needs_reversal(graph, e)) continue;
    std::swap(edges[e].a, edges[e].b);
    std::reverse(edges[e].polyline.begin(), edges[e].polyline.end());
  }
  map.graph_ = std::make_shared<const RoadGraph>(graph.nodes(), std::move(edges));
  map.finish();
  return map;
}

void AddressMap::finish() {
  central_ = densest_region(assignment_);
  labels_ = label_regions(assignment_, central_);
  region_by_label_.clear();
  for (std::size_t r = 0; r < labels_.size(); ++r) {
    const std::string text = labels_[r].text();
    if (text.size() > 2) {
      throw RegionOverflow(fmt::format("region label {} exceeds two letters", text));
    }
    region_by_label_[text] = r;
  }
  names_.assign(graph_->edge_count(), RoadName{});
  lookup_.clear();
  for (std::size_t r = 0; r < assignment_.regions.size(); ++r) {
    const std::string label = labels_[r].text();
    for (const auto& [e, name] : number_roads(*graph_, assignment_.regions[r].edges, label)) {
      names_[e] = name;
      lookup_[{name.region, name.number}] = e;
    }
  }
  index_ = SpatialIndex(*graph_);
}

GeocodeResult AddressMap::geocode(const AddressRecord& rec) const {
  if (rec.city != identity_.city || rec.state_code != identity_.state_code ||
      rec.country_code != identity_.country_code) {
    throw CityMismatch(fmt::format("address is not in {}", identity_.city));
  }
  if (!region_by_label_.contains(rec.region)) {
    throw UnknownRegion(fmt::format("no region {}", rec.region));
  }
  const auto it = lookup_.find({rec.region, rec.road_number});
  if (it == lookup_.end()) {
    throw UnknownRoad(fmt::format("no road {}{}", rec.region, rec.road_number));
  }
  const Edge& edge = graph_->edge(it->second);
  const double marker = static_cast<double>(rec.house_number / 2);
  const double along = std::clamp(kMarkerSpacingM * marker + kMarkerSpacingM / 2.0, 0.0, edge.length_m);
  const double offset =
      kBlockStepM * static_cast<double>(decode_base26(rec.block)) + kBlockStepM / 2.0;
  const Point normal = left_normal_at(edge, along);
  const double sign = rec.house_number % 2 == 0 ? 1.0 : -1.0;
  GeocodeResult out;
  out.xy = point_at(edge, along) + (sign * offset) * normal;
  if (anchor_) out.latlon = unproject(*anchor_, out.xy);
  return out;
}

AddressRecord AddressMap::address_at(const LinearRef& ref) const {
  const RoadName& name = names_.at(ref.edge);
  AddressRecord rec;
  rec.house_number = house_number(ref.along_m, ref.side);
  rec.block = block_letter(ref.offset_m);
  rec.region = name.region;
  rec.road_number = name.number;
  rec.city = identity_.city;
  rec.state_code = identity_.state_code;
  rec.country_code = identity_.country_code;
  rec.version_year = identity_.version_year;
  return rec;
}

AddressRecord AddressMap::reverse_geocode(Point p) const { return address_at(index_.locate(p)); }

AddressRecord AddressMap::reverse_geocode(LatLon p) const {
  if (!anchor_) throw ValidationError("map has no geographic anchor; query with x/y meters");
  return reverse_geocode(project(*anchor_, p));
}

MapStats AddressMap::stats() const {
  return {assignment_.regions.size(), graph_->edge_count(), graph_->total_length_m() / 1000.0};
}

// ---------------------------------------------------------------------------
// ADDRMAP v1 text format, one record per line:
//
//   ADDRMAP v1
//   city <name>
//   state <code or ->
//   country <code>
//   year <yyyy or ->
//   anchor <lat> <lon> | anchor -
//   nodes <n>            followed by n lines "<x> <y>"
//   edges <m>            followed by m lines "<a> <b> <k> <x1> <y1> ... <xk> <yk>"
//   region_of_node <n ids>
//   region_of_edge <m ids>
//   end
//
// Doubles are written in shortest round-trip form.

std::string AddressMap::serialize() const {
  std::string out = fmt::format("{} {}\n", kMagic, kVersion);
  out += fmt::format("city {}\n", identity_.city);
  out += fmt::format("state {}\n", identity_.state_code.value_or("-"));
  out += fmt::format("country {}\n", identity_.country_code);
  out += identity_.version_year ? fmt::format("year {:04d}\n", *identity_.version_year)
                                : std::string("year -\n");
  out += anchor_ ? fmt::format("anchor {} {}\n", anchor_->lat, anchor_->lon)
                 : std::string("anchor -\n");
  out += fmt::format("nodes {}\n", graph_->node_count());
  for (const Point& p : graph_->nodes()) out += fmt::format("{} {}\n", p.x, p.y);
  out += fmt::format("edges {}\n", graph_->edge_count());
  for (const Edge& e : graph_->edges()) {
    out += fmt::format("{} {} {}", e.a, e.b, e.polyline.size());
    for (const Point& p : e.polyline) out += fmt::format(" {} {}", p.x, p.y);
    out += '\n';
  }
  out += fmt::format("region_of_node {}\n", fmt::join(assignment_.region_of_node, " "));
  out += fmt::format("region_of_edge {}\n", fmt::join(assignment_.region_of_edge, " "));
  out += "end\n";
  return out;
}

void AddressMap::save(const std::filesystem::path& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(fmt::format("cannot open {} for writing", path.string()));
  f << serialize();
  if (!f) throw Error(fmt::format("failed writing {}", path.string()));
}

namespace {

class LineReader {
 public:
  explicit LineReader(const std::string& text) : in_(text) {}

  std::istringstream next(const char* key) {
    std::string line;
    ++line_no_;
    if (!std::getline(in_, line)) {
      throw ParseError(fmt::format("truncated ADDRMAP at line {}", line_no_));
    }
    std::istringstream ss(line);
    if (key != nullptr && *key != '\0') {
      std::string word;
      ss >> word;
      if (word != key) {
        throw ParseError(fmt::format("line {}: expected '{}', got '{}'", line_no_, key, word));
      }
    }
    return ss;
  }

  std::size_t line_no() const { return line_no_; }

 private:
  std::istringstream in_;
  std::size_t line_no_ = 0;
};

template <typename T>
T read_value(std::istringstream& ss, std::size_t line) {
  std::string tok;
  if (!(ss >> tok)) throw ParseError(fmt::format("line {}: missing value", line));
  T v{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(fmt::format("line {}: bad number '{}'", line, tok));
  }
  return v;
}

std::string read_word(std::istringstream& ss, std::size_t line) {
  std::string tok;
  if (!(ss >> tok)) throw ParseError(fmt::format("line {}: missing value", line));
  return tok;
}

void expect_end_of_line(std::istringstream& ss, std::size_t line) {
  std::string extra;
  if (ss >> extra) throw ParseError(fmt::format("line {}: unexpected '{}'", line, extra));
}

}  // namespace

AddressMap AddressMap::deserialize(const std::string& text) {
  LineReader r(text);
  {
    auto ss = r.next(nullptr);
    std::string magic, version;
    ss >> magic >> version;
    if (magic != kMagic) throw ParseError("not an ADDRMAP file");
    if (version != kVersion) {
      throw ParseError(fmt::format("unsupported ADDRMAP version '{}'", version));
    }
  }
  AddressMap map;
  try {
    {
      auto ss = r.next("city");
      map.identity_.city = read_word(ss, r.line_no());
    }
    {
      auto ss = r.next("state");
      const std::string s = read_word(ss, r.line_no());
      if (s != "-") map.identity_.state_code = s;
    }
    {
      auto ss = r.next("country");
      map.identity_.country_code = read_word(ss, r.line_no());
    }
    {
      auto ss = r.next("year");
      const std::string s = read_word(ss, r.line_no());
      if (s != "-") {
        std::istringstream ys(s);
        map.identity_.version_year = read_value<int>(ys, r.line_no());
      }
    }
    validate(map.identity_);
    {
      auto ss = r.next("anchor");
      std::string first = read_word(ss, r.line_no());
      if (first != "-") {
        std::istringstream as(first);
        const double lat = read_value<double>(as, r.line_no());
        const double lon = read_value<double>(ss, r.line_no());
        map.anchor_ = LatLon{lat, lon};
      }
      expect_end_of_line(ss, r.line_no());
    }

    std::vector<Point> nodes;
    {
      auto ss = r.next("nodes");
      const auto n = read_value<std::size_t>(ss, r.line_no());
      for (std::size_t i = 0; i < n; ++i) {
        auto ls = r.next("");
        const double x = read_value<double>(ls, r.line_no());
        const double y = read_value<double>(ls, r.line_no());
        expect_end_of_line(ls, r.line_no());
        nodes.push_back({x, y});
      }
    }
    std::vector<Edge> edges;
    {
      auto ss = r.next("edges");
      const auto m = read_value<std::size_t>(ss, r.line_no());
      for (std::size_t i = 0; i < m; ++i) {
        auto ls = r.next("");
        Edge e;
        e.a = read_value<NodeId>(ls, r.line_no());
        e.b = read_value<NodeId>(ls, r.line_no());
        const auto k = read_value<std::size_t>(ls, r.line_no());
        for (std::size_t j = 0; j < k; ++j) {
          const double x = read_value<double>(ls, r.line_no());
          const double y = read_value<double>(ls, r.line_no());
          e.polyline.push_back({x, y});
        }
        expect_end_of_line(ls, r.line_no());
        edges.push_back(std::move(e));
      }
    }
    map.graph_ = std::make_shared<const RoadGraph>(std::move(nodes), std::move(edges));
    if (map.graph_->empty()) throw ParseError("ADDRMAP holds no edges");

    auto read_ids = [&](const char* key, std::size_t count) {
      auto ss = r.next(key);
      std::vector<std::size_t> ids(count);
      for (auto& id : ids) id = read_value<std::size_t>(ss, r.line_no());
      expect_end_of_line(ss, r.line_no());
      return ids;
    };
    auto& asg = map.assignment_;
    asg.region_of_node = read_ids("region_of_node", map.graph_->node_count());
    asg.region_of_edge = read_ids("region_of_edge", map.graph_->edge_count());
    r.next("end");

    std::size_t count = 0;
    for (auto id : asg.region_of_node) count = std::max(count, id + 1);
    for (auto id : asg.region_of_edge) {
      if (id >= count) throw ParseError(fmt::format("edge region {} has no nodes", id));
    }
    asg.regions = summarize_regions(*map.graph_, asg.region_of_node, asg.region_of_edge, count);
    for (std::size_t i = 0; i < count; ++i) {
      if (asg.regions[i].nodes.empty()) throw ParseError(fmt::format("region {} has no nodes", i));
    }
    map.finish();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(fmt::format("invalid ADDRMAP contents: {}", e.what()));
  }
  return map;
}

AddressMap AddressMap::load(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError(fmt::format("cannot open {}", path.string()));
  std::ostringstream ss;
  ss << f.rdbuf();
  return deserialize(ss.str());
}

nlohmann::json AddressMap::to_geojson() const {
  auto coord = [&](Point p) {
    if (anchor_) {
      const LatLon ll = unproject(*anchor_, p);
      return nlohmann::json::array({ll.lon, ll.lat});
    }
    return nlohmann::json::array({p.x, p.y});
  };
  nlohmann::json features = nlohmann::json::array();
  for (EdgeId e = 0; e < graph_->edge_count(); ++e) {
    const Edge& edge = graph_->edge(e);
    nlohmann::json coords = nlohmann::json::array();
    for (const Point& p : edge.polyline) coords.push_back(coord(p));
    features.push_back({
        {"type", "Feature"},
        {"geometry", {{"type", "LineString"}, {"coordinates", coords}}},
        {"properties",
         {{"road_name", names_[e].text()},
          {"region", labels_[assignment_.region_of_edge[e]].text()},
          {"length_m", edge.length_m}}},
    });
  }
  for (std::size_t r = 0; r < assignment_.regions.size(); ++r) {
    const Region& region = assignment_.regions[r];
    features.push_back({
        {"type", "Feature"},
        {"geometry", {{"type", "Point"}, {"coordinates", coord(region.centroid)}}},
        {"properties", {{"region_label", labels_[r].text()}, {"density", region.road_density}}},
    });
  }
  nlohmann::json doc = {{"type", "FeatureCollection"}, {"features", features}};
  if (!anchor_) {
    doc["crs_note"] = "coordinates are local planar meters (x east, y north); the map has no geographic anchor";
  }
  return doc;
}

void AddressMap::export_geojson(const std::filesystem::path& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(fmt::format("cannot open {} for writing", path.string()));
  f << to_geojson().dump(2) << '\n';
  if (!f) throw Error(fmt::format("failed writing {}", path.string()));
}

}  // namespace streetaddr
