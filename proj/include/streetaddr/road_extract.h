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

#ifndef STREETADDR_ROAD_EXTRACT_H_
#define STREETADDR_ROAD_EXTRACT_H_

#include <string>
#include <vector>

#include "streetaddr/raster.h"
#include "streetaddr/road_graph.h"

namespace streetaddr {

struct Pixel {
  int col = 0;
  int row = 0;
  friend constexpr bool operator==(Pixel, Pixel) = default;
  friend constexpr auto operator<=>(Pixel a, Pixel b) {
    // Raster order: row first.
    if (auto c = a.row <=> b.row; c != 0) return c;
    return a.col <=> b.col;
  }
};

// An 8-connected run of skeleton pixels between two chain ends.
struct PixelChain {
  std::vector<Pixel> pixels;
  // Axial orientation of each end in degrees [0,180), compass convention
  // (0 = north-south, 90 = east-west), estimated over the terminal window.
  double start_dir = 0.0;
  double end_dir = 0.0;
  // Whether each end sits on a junction pixel (or a split point) rather than
  // a free road end.
  bool start_fixed = false;
  bool end_fixed = false;
};

// Tunables for raster-to-graph extraction. Every field is overridable from
// the command line.
struct ExtractParams {
  int threshold = kDefaultThreshold;
  int join_radius_px = 10;
  int join_confidence = 64;
  int endpoint_window_px = 7;
  int orientation_buckets = 4;  // 45 degree classes
  int min_chain_px = 6;

  // Throws ValidationError unless all fields are positive and the bucket
  // count divides 180.
  void validate() const;
  double bucket_width_deg() const { return 180.0 / orientation_buckets; }
};

// Zhang-Suen thinning followed by a staircase pass, so every skeleton pixel
// on a simple path has exactly two 8-neighbors.
BinaryMask thin(const BinaryMask& mask);

// Number of separate runs of set pixels around (col,row) in its 8-ring:
// 1 at a road end, 2 on a path, 3+ at a junction.
int branch_count(const BinaryMask& mask, int col, int row);

// Splits the skeleton into chains that end at junction pixels and free ends.
// Junction pixels are shared as chain ends; every other pixel lands in at most
// one chain. Free-ended chains shorter than min_chain_px are dropped.
std::vector<PixelChain> trace_chains(const BinaryMask& skeleton, const ExtractParams& params);

// Bridges gaps between free chain ends: within join_radius_px, orientations
// within one bucket, and mean confidence on the bridging line of at least
// join_confidence. Joins chain transitively.
std::vector<PixelChain> join_chains(const std::vector<PixelChain>& chains,
                                    const ConfidenceRaster& raster,
                                    const ExtractParams& params);

// Straightens the last endpoint_window_px pixels of every free end onto the
// window's median orientation.
std::vector<PixelChain> filter_endpoints(const std::vector<PixelChain>& chains,
                                         const ExtractParams& params);

// Thinning pulls free ends back from the stroke's end. Regrows each free end
// along its terminal direction while the mask clearance stays within half a
// pixel of the chain's median clearance.
std::vector<PixelChain> extend_ends(const std::vector<PixelChain>& chains, const BinaryMask& mask,
                                    const ExtractParams& params);

// Splits chains at sharp turns (at least one orientation bucket).
std::vector<PixelChain> split_at_turns(const std::vector<PixelChain>& chains,
                                       const ExtractParams& params);

// Chains to a topological graph in world meters. Throws DegenerateInput when
// nothing survives.
RoadGraph build_graph(const std::vector<PixelChain>& chains, const ExtractParams& params,
                      const GeoTransform& transform);

struct Extraction {
  std::vector<PixelChain> chains;  // after join, endpoint filtering and regrowth
  RoadGraph graph;
};

// binarize -> thin -> trace -> join -> filter -> extend -> build_graph.
Extraction extract_roads(const ConfidenceRaster& raster, const ExtractParams& params);

// Axial orientation in degrees [0,180) of the pixel displacement from -> to.
double axial_orientation_deg(Pixel from, Pixel to);

// Chains as a GeoJSON FeatureCollection of LineStrings in world meters.
std::string chains_to_geojson(const std::vector<PixelChain>& chains,
                              const GeoTransform& transform);

}  // namespace streetaddr

#endif  // STREETADDR_ROAD_EXTRACT_H_
