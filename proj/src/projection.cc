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

#include "streetaddr/projection.h"

#include <cmath>

namespace streetaddr {

namespace {
constexpr double kDeg = M_PI / 180.0;
}

Point project(LatLon anchor, LatLon p) {
  return {kEarthRadiusM * (p.lon - anchor.lon) * kDeg * std::cos(anchor.lat * kDeg),
          kEarthRadiusM * (p.lat - anchor.lat) * kDeg};
}

LatLon unproject(LatLon anchor, Point p) {
  return {anchor.lat + p.y / (kEarthRadiusM * kDeg),
          anchor.lon + p.x / (kEarthRadiusM * kDeg * std::cos(anchor.lat * kDeg))};
}

}  // namespace streetaddr
