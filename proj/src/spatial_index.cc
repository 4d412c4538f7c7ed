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

#include "streetaddr/spatial_index.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace streetaddr {

SpatialIndex::SpatialIndex(const RoadGraph& graph) : graph_(&graph) {
  cell_ = std::max(kMinCellSize, graph.mean_edge_length_m() / 4.0);
  if (graph.empty()) return;

  double min_x = std::numeric_limits<double>::infinity(), min_y = min_x;
  double max_x = -min_x, max_y = -min_x;
  for (const Edge& e : graph.edges()) {
    for (Point p : e.polyline) {
      min_x = std::min(min_x, p.x);
      min_y = std::min(min_y, p.y);
      max_x = std::max(max_x, p.x);
      max_y = std::max(max_y, p.y);
    }
  }
  min_cx_ = static_cast<long>(std::floor(min_x / cell_));
  min_cy_ = static_cast<long>(std::floor(min_y / cell_));
  nx_ = static_cast<long>(std::floor(max_x / cell_)) - min_cx_ + 1;
  ny_ = static_cast<long>(std::floor(max_y / cell_)) - min_cy_ + 1;
  cells_.assign(static_cast<std::size_t>(nx_ * ny_), {});

  for (EdgeId id = 0; id < graph.edge_count(); ++id) {
    const auto& pl = graph.edge(id).polyline;
    for (std::uint32_t s = 0; s + 1 < pl.size(); ++s) {
      const long x0 = cell_x(std::min(pl[s].x, pl[s + 1].x));
      const long x1 = cell_x(std::max(pl[s].x, pl[s + 1].x));
      const long y0 = cell_y(std::min(pl[s].y, pl[s + 1].y));
      const long y1 = cell_y(std::max(pl[s].y, pl[s + 1].y));
      for (long cy = y0; cy <= y1; ++cy) {
        for (long cx = x0; cx <= x1; ++cx) {
          cells_[static_cast<std::size_t>(cy - min_cy_) * nx_ + (cx - min_cx_)].push_back(
              {id, s});
        }
      }
    }
  }
}

long SpatialIndex::cell_x(double x) const {
  return std::clamp(static_cast<long>(std::floor(x / cell_)), min_cx_, min_cx_ + nx_ - 1);
}

long SpatialIndex::cell_y(double y) const {
  return std::clamp(static_cast<long>(std::floor(y / cell_)), min_cy_, min_cy_ + ny_ - 1);
}

LinearRef SpatialIndex::locate(Point p) const {
  LinearRef best;
  if (graph_ == nullptr || graph_->empty()) return best;

  const long qx = cell_x(p.x);
  const long qy = cell_y(p.y);
  const long max_ring = std::max({qx - min_cx_, min_cx_ + nx_ - 1 - qx, qy - min_cy_,
                                  min_cy_ + ny_ - 1 - qy});

  double best_dist = std::numeric_limits<double>::infinity();
  bool found = false;
  std::vector<EdgeId> seen;

  for (long r = 0; r <= max_ring; ++r) {
    if (found && r > 0) {
      // Rings 0..r-1 cover a square; anything in ring r or beyond lies
      // outside it. Stop once that square's boundary is farther than the
      // best hit (strictly, so equal-distance ties are still visited).
      const double gap =
          std::min({p.x - static_cast<double>(qx - r + 1) * cell_,
                    static_cast<double>(qx + r) * cell_ - p.x,
                    p.y - static_cast<double>(qy - r + 1) * cell_,
                    static_cast<double>(qy + r) * cell_ - p.y});
      if (gap > best_dist) break;
    }
    for (long cy = qy - r; cy <= qy + r; ++cy) {
      if (cy < min_cy_ || cy >= min_cy_ + ny_) continue;
      const bool full_row = (cy == qy - r || cy == qy + r);
      for (long cx = qx - r; cx <= qx + r; cx += (full_row || r == 0) ? 1 : 2 * r) {
        if (cx < min_cx_ || cx >= min_cx_ + nx_) continue;
        for (const SegmentRef& ref : cell(cx, cy)) {
          auto it = std::lower_bound(seen.begin(), seen.end(), ref.edge);
          if (it != seen.end() && *it == ref.edge) continue;
          seen.insert(it, ref.edge);
          const EdgeProjection proj = project_onto_edge(graph_->edge(ref.edge), p);
          if (!found || proj.distance < best_dist ||
              (proj.distance == best_dist && ref.edge < best.edge)) {
            found = true;
            best_dist = proj.distance;
            best.edge = ref.edge;
            best.along_m = proj.along_m;
            best.offset_m = proj.distance;
            best.side = proj.side == Side::Right ? Side::Right : Side::Left;
          }
        }
      }
    }
  }
  return best;
}

}  // namespace streetaddr
