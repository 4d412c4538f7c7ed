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

#ifndef STREETADDR_LABELING_H_
#define STREETADDR_LABELING_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "streetaddr/region_partition.h"
#include "streetaddr/road_graph.h"

namespace streetaddr {

inline constexpr double kMarkerSpacingM = 5.0;
inline constexpr double kBlockStepM = 5.0;

// Bijective base-26 over A..Z with 0 -> "A", 25 -> "Z", 26 -> "AA".
std::string encode_base26(std::uint64_t value);
// Inverse of encode_base26. Throws ParseError for anything outside [A-Z]+
// or a value that does not fit in 64 bits.
std::uint64_t decode_base26(std::string_view letters);

struct RegionLabel {
  char quadrant = 'C';  // C, N, E, S or W
  std::uint64_t index = 0;

  std::string text() const { return quadrant + encode_base26(index); }
  friend bool operator==(const RegionLabel&, const RegionLabel&) = default;
};

// The densest region becomes CA. Every other region takes the quadrant of
// the bearing from CA's centroid to its own, and an index by distance.
std::vector<RegionLabel> label_regions(const RegionAssignment& assignment, std::size_t densest);

enum class Orientation { NS, EW };

const char* to_string(Orientation o);

// From the chord between the polyline ends, folded into [0, 180).
double chord_bearing_deg(const Edge& edge);
Orientation orient_road(const Edge& edge);

struct RoadName {
  std::string region;
  std::uint64_t number = 0;
  Orientation orientation = Orientation::NS;

  std::string text() const { return region + std::to_string(number); }
  friend bool operator==(const RoadName&, const RoadName&) = default;
};

// Odd numbers for NS edges west to east, even for EW edges north to south.
std::map<EdgeId, RoadName> number_roads(const RoadGraph& graph, const std::vector<EdgeId>& edges,
                                        const std::string& region_label);

std::uint64_t house_number(double along_m, Side side);
std::string block_letter(double offset_m);

// True when meter 0 of `edge` belongs at its b end: the southern end for NS
// roads, the western end for EW roads, the lower node id on a tie.
bool needs_reversal(const RoadGraph& graph, EdgeId edge);

}  // namespace streetaddr

#endif  // STREETADDR_LABELING_H_
