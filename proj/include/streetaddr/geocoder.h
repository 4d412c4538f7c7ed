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

#ifndef STREETADDR_GEOCODER_H_
#define STREETADDR_GEOCODER_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "streetaddr/address.h"
#include "streetaddr/labeling.h"
#include "streetaddr/raster.h"
#include "streetaddr/region_partition.h"
#include "streetaddr/road_graph.h"
#include "streetaddr/spatial_index.h"

namespace streetaddr {

// The city-level fields every address on a map shares.
struct MapIdentity {
  std::string city;
  std::optional<std::string> state_code;
  std::string country_code;
  std::optional<int> version_year;

  friend bool operator==(const MapIdentity&, const MapIdentity&) = default;
};

struct MapConfig {
  PartitionParams partition;
  BisectOptions bisect;
  MapIdentity identity;
  std::optional<LatLon> anchor;
};

struct GeocodeResult {
  Point xy;
  std::optional<LatLon> latlon;
};

struct MapStats {
  std::size_t regions = 0;
  std::size_t roads = 0;
  double total_km = 0.0;
};

// Immutable after build or load; safe for concurrent readers.
class AddressMap {
 public:
  static constexpr const char* kMagic = "ADDRMAP";
  static constexpr const char* kVersion = "v1";

  // Throws DegenerateInput for an empty graph and RegionOverflow when a
  // quadrant holds more regions than a two-letter label can name.
  static AddressMap build(const RoadGraph& graph, const MapConfig& config);

  // Throws CityMismatch, UnknownRegion or UnknownRoad.
  GeocodeResult geocode(const AddressRecord& rec) const;
  AddressRecord reverse_geocode(Point p) const;
  // Throws ValidationError when the map has no geographic anchor.
  AddressRecord reverse_geocode(LatLon p) const;

  void save(const std::filesystem::path& path) const;
  std::string serialize() const;
  // Throws ParseError for corrupt, truncated or foreign files.
  static AddressMap load(const std::filesystem::path& path);
  static AddressMap deserialize(const std::string& text);

  nlohmann::json to_geojson() const;
  void export_geojson(const std::filesystem::path& path) const;

  const RoadGraph& graph() const { return *graph_; }
  const RegionAssignment& assignment() const { return assignment_; }
  const std::vector<RegionLabel>& region_labels() const { return labels_; }
  std::size_t central_region() const { return central_; }
  const RoadName& road_name(EdgeId e) const { return names_.at(e); }
  const MapIdentity& identity() const { return identity_; }
  const std::optional<LatLon>& anchor() const { return anchor_; }
  const SpatialIndex& index() const { return index_; }
  MapStats stats() const;

  // Address for an exact linear reference on the map.
  AddressRecord address_at(const LinearRef& ref) const;

 private:
  AddressMap() = default;
  void finish();

  std::shared_ptr<const RoadGraph> graph_;
  RegionAssignment assignment_;
  std::size_t central_ = 0;
  std::vector<RegionLabel> labels_;
  std::vector<RoadName> names_;
  std::map<std::pair<std::string, std::uint64_t>, EdgeId> lookup_;
  std::map<std::string, std::size_t> region_by_label_;
  SpatialIndex index_;
  MapIdentity identity_;
  std::optional<LatLon> anchor_;
};

// Throws ValidationError unless the identity fields are valid address parts.
void validate(const MapIdentity& identity);

}  // namespace streetaddr

#endif  // STREETADDR_GEOCODER_H_
