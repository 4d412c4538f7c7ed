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

#ifndef STREETADDR_PROJECTION_H_
#define STREETADDR_PROJECTION_H_

#include "streetaddr/geometry.h"
#include "streetaddr/raster.h"

namespace streetaddr {

// Mean Earth radius, meters.
inline constexpr double kEarthRadiusM = 6371008.8;

// Equirectangular projection about `anchor`: x east, y north, meters.
Point project(LatLon anchor, LatLon p);
LatLon unproject(LatLon anchor, Point p);

}  // namespace streetaddr

#endif  // STREETADDR_PROJECTION_H_
