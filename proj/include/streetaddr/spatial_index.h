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

#ifndef STREETADDR_SPATIAL_INDEX_H_
#define STREETADDR_SPATIAL_INDEX_H_

#include <cstdint>
#include <vector>

#include "streetaddr/road_graph.h"

namespace streetaddr {

// Uniform grid over polyline sub-segments. The graph must outlive the index.
class SpatialIndex {
 public:
  static constexpr double kMinCellSize = 25.0;

  SpatialIndex() = default;
  explicit SpatialIndex(const RoadGraph& graph);

  double cell_size() const { return cell_; }

  // Exact nearest polyline point over the whole graph. Ties go to the
  // smaller edge id, then the earlier sub-segment.
  LinearRef locate(Point p) const;

 private:
  struct SegmentRef {
    EdgeId edge;
    std::uint32_t segment;
  };

  const std::vector<SegmentRef>& cell(long cx, long cy) const {
    return cells_[static_cast<std::size_t>(cy - min_cy_) * nx_ + (cx - min_cx_)];
  }
  long cell_x(double x) const;
  long cell_y(double y) const;

  const RoadGraph* graph_ = nullptr;
  double cell_ = kMinCellSize;
  long min_cx_ = 0, min_cy_ = 0;
  long nx_ = 0, ny_ = 0;
  std::vector<std::vector<SegmentRef>> cells_;
};

}  // namespace streetaddr

#endif  // STREETADDR_SPATIAL_INDEX_H_
