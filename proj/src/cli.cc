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

#include "streetaddr/cli.h"

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"
#include "streetaddr/address.h"
#include "streetaddr/error.h"
#include "streetaddr/geocoder.h"
#include "streetaddr/osm.h"
#include "streetaddr/raster.h"
#include "streetaddr/road_extract.h"

namespace streetaddr::cli {

namespace {

struct Options {
  std::string raster, world, osm, index, geojson, debug_chains;
  std::string city, state, country;
  std::optional<int> year;
  ExtractParams extract;
  PartitionParams partition;
  std::string sigma_mode = "mean_edge_length";
  std::string address;
  std::optional<double> x, y, lat, lon;
  int verbosity = 0;
};

void add_index(CLI::App* cmd, Options& o) {
  cmd->add_option("--index,--out", o.index, "ADDRMAP index file")->required();
}

void print_summary(std::ostream& out, const AddressMap& map) {
  const MapStats s = map.stats();
  fmt::print(out, "regions {}\nroads {}\ntotal_km {:.3f}\n", s.regions, s.roads, s.total_km);
}

int cmd_generate(const Options& o, std::ostream& out, std::ostream& err) {
  const bool have_raster = !o.raster.empty();
  const bool have_osm = !o.osm.empty();
  if (have_raster == have_osm) {
    throw ValidationError("generate needs exactly one input: --raster with --world, or --osm");
  }
  if (have_raster && o.world.empty()) throw ValidationError("--raster requires --world");
  if (!have_raster && !o.world.empty()) throw ValidationError("--world is only valid with --raster");

  MapConfig config;
  config.identity = {o.city, o.state.empty() ? std::nullopt : std::optional(o.state), o.country, o.year};
  validate(config.identity);
  config.partition = o.partition;
  config.partition.sigma_mode =
      o.sigma_mode == "fixed" ? SigmaMode::Fixed : SigmaMode::MeanEdgeLength;
  config.partition.validate();

  RoadGraph graph;
  if (have_raster) {
    o.extract.validate();
    const ConfidenceRaster raster = load_raster(o.raster, o.world);
    Extraction ex = extract_roads(raster, o.extract);
    if (!o.debug_chains.empty()) {
      std::ofstream f(o.debug_chains, std::ios::binary);
      f << chains_to_geojson(ex.chains, raster.transform()) << '\n';
      if (!f) throw Error(fmt::format("failed writing {}", o.debug_chains));
    }
    if (o.verbosity > 0) {
      fmt::print(err, "extracted {} chains, {} nodes, {} edges\n", ex.chains.size(),
                 ex.graph.node_count(), ex.graph.edge_count());
    }
    config.anchor = raster.transform().anchor();
    graph = std::move(ex.graph);
  } else {
    const OsmSubset subset = parse_osm(o.osm);
    if (subset.dropped_refs > 0) {
      fmt::print(err, "warning: dropped {} unresolved node references\n", subset.dropped_refs);
    }
    OsmGraph og = to_graph(subset);
    if (o.verbosity > 0) {
      fmt::print(err, "{} highway ways, {} nodes, {} edges\n", subset.ways.size(),
                 og.graph.node_count(), og.graph.edge_count());
    }
    config.anchor = og.anchor;
    graph = std::move(og.graph);
  }

  const AddressMap map = AddressMap::build(graph, config);
  map.save(o.index);
  if (!o.geojson.empty()) map.export_geojson(o.geojson);
  print_summary(out, map);
  return kOk;
}

void print_position(std::ostream& out, const GeocodeResult& r) {
  if (r.latlon) {
    fmt::print(out, "{:.6f} {:.6f} {:.9f} {:.9f}\n", r.xy.x, r.xy.y, r.latlon->lat, r.latlon->lon);
  } else {
    fmt::print(out, "{:.6f} {:.6f}\n", r.xy.x, r.xy.y);
  }
}

int cmd_geocode(const Options& o, std::ostream& out) {
  const AddressRecord rec = parse_address(o.address);
  const AddressMap map = AddressMap::load(o.index);
  print_position(out, map.geocode(rec));
  return kOk;
}

int cmd_revgeo(const Options& o, std::ostream& out) {
  const bool xy = o.x || o.y;
  const bool ll = o.lat || o.lon;
  if (xy == ll) throw ValidationError("revgeo needs either --x and --y, or --lat and --lon");
  if (xy && !(o.x && o.y)) throw ValidationError("--x and --y must be given together");
  if (ll && !(o.lat && o.lon)) throw ValidationError("--lat and --lon must be given together");
  const AddressMap map = AddressMap::load(o.index);
  const AddressRecord rec =
      xy ? map.reverse_geocode(Point{*o.x, *o.y}) : map.reverse_geocode(LatLon{*o.lat, *o.lon});
  fmt::print(out, "{}\n", format_address(rec));
  return kOk;
}

int cmd_export(const Options& o, std::ostream& out) {
  const AddressMap map = AddressMap::load(o.index);
  map.export_geojson(o.geojson);
  fmt::print(out, "wrote {}\n", o.geojson);
  return kOk;
}

int cmd_stats(const Options& o, std::ostream& out) {
  const AddressMap map = AddressMap::load(o.index);
  print_summary(out, map);
  const auto& regions = map.assignment().regions;
  for (std::size_t r = 0; r < regions.size(); ++r) {
    fmt::print(out, "region {} nodes {} edges {} hull_m2 {:.1f} density_per_km2 {:.3f}\n",
               map.region_labels()[r].text(), regions[r].nodes.size(), regions[r].edges.size(),
               regions[r].hull_area_m2, regions[r].road_density * 1e6);
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Street addresses from road rasters or OSM extracts"};
  app.name("streetaddr");
  app.require_subcommand(1);
  app.add_flag("-v,--verbose", o.verbosity, "Verbose diagnostics");

  auto* gen = app.add_subcommand("generate", "Build an ADDRMAP index");
  gen->add_option("--raster", o.raster, "Road confidence image (binary PGM)");
  gen->add_option("--world", o.world, "World file for the raster");
  gen->add_option("--osm", o.osm, "OSM XML extract");
  add_index(gen, o);
  gen->add_option("--geojson", o.geojson, "Also write a GeoJSON map");
  gen->add_option("--city", o.city, "City token")->required();
  gen->add_option("--state", o.state, "Two-letter state code");
  gen->add_option("--country", o.country, "Two-letter country code")->required();
  gen->add_option("--year", o.year, "Version year");
  gen->add_option("--threshold", o.extract.threshold, "Binarization threshold")->capture_default_str();
  gen->add_option("--join-radius-px", o.extract.join_radius_px, "Gap join radius")
      ->capture_default_str();
  gen->add_option("--join-confidence", o.extract.join_confidence, "Mean confidence to bridge a gap")
      ->capture_default_str();
  gen->add_option("--endpoint-window-px", o.extract.endpoint_window_px, "Endpoint filter window")
      ->capture_default_str();
  gen->add_option("--orientation-buckets", o.extract.orientation_buckets,
                  "Orientation classes over 180 degrees")
      ->capture_default_str();
  gen->add_option("--min-chain-px", o.extract.min_chain_px, "Shortest dangling chain kept")
      ->capture_default_str();
  gen->add_option("--max-region-edges", o.partition.max_region_edges, "Region size cap")
      ->capture_default_str();
  gen->add_option("--ncut-stop", o.partition.ncut_stop, "Largest Ncut still split")
      ->capture_default_str();
  gen->add_option("--affinity-sigma-mode", o.sigma_mode, "fixed or mean_edge_length")
      ->check(CLI::IsMember({"fixed", "mean_edge_length"}))
      ->capture_default_str();
  gen->add_option("--affinity-sigma-m", o.partition.fixed_sigma_m, "Sigma in fixed mode")
      ->capture_default_str();
  gen->add_option("--debug-chains", o.debug_chains, "Write traced chains as GeoJSON");

  auto* geo = app.add_subcommand("geocode", "Address to coordinates");
  add_index(geo, o);
  geo->add_option("address", o.address, "Address string")->required();

  auto* rev = app.add_subcommand("revgeo", "Coordinates to address");
  add_index(rev, o);
  rev->add_option("--x", o.x, "Easting, meters");
  rev->add_option("--y", o.y, "Northing, meters");
  rev->add_option("--lat", o.lat, "Latitude, degrees");
  rev->add_option("--lon", o.lon, "Longitude, degrees");

  auto* exp = app.add_subcommand("export", "Write the map as GeoJSON");
  add_index(exp, o);
  exp->add_option("--geojson", o.geojson, "Output path")->required();

  auto* stats = app.add_subcommand("stats", "Summarize an index");
  add_index(stats, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*gen) return cmd_generate(o, out, err);
    if (*geo) return cmd_geocode(o, out);
    if (*rev) return cmd_revgeo(o, out);
    if (*exp) return cmd_export(o, out);
    return cmd_stats(o, out);
  } catch (const ParseError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kInputError;
  } catch (const ValidationError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kInputError;
  } catch (const DegenerateInput& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kDegenerateInput;
  } catch (const NotFound& e) {
    fmt::print(err, "not found: {}\n", e.what());
    return kNotFound;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kInternalError;
  }
}

}  // namespace streetaddr::cli
