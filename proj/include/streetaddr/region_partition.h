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

#ifndef STREETADDR_REGION_PARTITION_H_
#define STREETADDR_REGION_PARTITION_H_

#include <cstddef>
#include <functional>
#include <vector>

#include "streetaddr/road_graph.h"

namespace streetaddr {

enum class SigmaMode { Fixed, MeanEdgeLength };

struct PartitionParams {
  std::size_t max_region_edges = 64;
  double ncut_stop = 0.5;
  SigmaMode sigma_mode = SigmaMode::MeanEdgeLength;
  double fixed_sigma_m = 100.0;  // used when sigma_mode == Fixed

  void validate() const;
};

// Undirected weighted graph on nodes [0, node_count). Parallel links add up.
struct AffinityGraph {
  struct Link {
    std::size_t u;
    std::size_t v;
    double weight;
  };
  std::size_t node_count = 0;
  std::vector<Link> links;

  std::vector<double> degrees() const;
  bool connected() const;
};

// Affinity exp(-length / sigma) per road edge, sigma taken per connected
// component according to `params`.
AffinityGraph road_affinities(const RoadGraph& graph, const PartitionParams& params);

// cut(A,B)/assoc(A,V) + cut(A,B)/assoc(B,V). `in_a` marks side A. Throws
// ValidationError for an empty side and DegenerateCut for a zero volume.
double ncut_value(const AffinityGraph& graph, const std::vector<bool>& in_a);

struct Bisection {
  std::vector<bool> in_a;      // side holding node 0
  double ncut = 0.0;
  std::vector<double> vector;  // eigenvector whose sweep produced the split
  double eigenvalue = 0.0;     // second-smallest normalized-Laplacian eigenvalue
};

struct BisectOptions {
  // Components up to this size use a dense eigensolver; larger ones use
  // shifted inverse subspace iteration on the sparse Laplacian.
  std::size_t dense_limit = 1200;
  // Picks between splits whose ncut ties the minimum: true when the first
  // should replace the second. Unset keeps the first one found.
  std::function<bool(const std::vector<bool>&, const std::vector<bool>&)> prefer;
};

// Spectral bisection: the eigenvector for the second-smallest eigenvalue of
// I - D^-1/2 W D^-1/2 is mapped through D^-1/2, sorted, and every threshold
// split is scored with ncut_value. When that eigenvalue is repeated, every
// direction in a fixed fan across its eigenspace is swept as well. Throws
// NotConnected for a disconnected graph.
Bisection bisect(const AffinityGraph& graph, const BisectOptions& options = {});

struct Region {
  std::vector<NodeId> nodes;  // ascending
  std::vector<EdgeId> edges;  // ascending
  Point centroid;             // mean node position
  double hull_area_m2 = 0.0;  // 0 when nodes are collinear
  double road_density = 0.0;  // edges per m^2, 0 for a degenerate hull
};

struct RegionAssignment {
  std::vector<std::size_t> region_of_node;
  std::vector<std::size_t> region_of_edge;
  std::vector<Region> regions;
};

// Recursive normalized-cut partition. Region ids are ordered by centroid
// (north first, then west first).
RegionAssignment partition(const RoadGraph& graph, const PartitionParams& params,
                           const BisectOptions& options = {});

// Fills nodes, edges, centroid, hull and density for every region from the
// two membership arrays.
std::vector<Region> summarize_regions(const RoadGraph& graph,
                                      const std::vector<std::size_t>& region_of_node,
                                      const std::vector<std::size_t>& region_of_edge,
                                      std::size_t region_count);

// Region with the most edges per unit hull area.
std::size_t densest_region(const RegionAssignment& assignment);

}  // namespace streetaddr

#endif  // STREETADDR_REGION_PARTITION_H_
