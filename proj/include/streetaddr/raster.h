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

#ifndef STREETADDR_RASTER_H_
#define STREETADDR_RASTER_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "streetaddr/geometry.h"

namespace streetaddr {

inline constexpr double kDefaultPixelSize = 0.5;  // meters per pixel
inline constexpr int kDefaultThreshold = 128;

struct LatLon {
  double lat = 0.0;
  double lon = 0.0;
  friend bool operator==(const LatLon&, const LatLon&) = default;
};

// Pixel coordinates, column first. Real-valued so sub-pixel positions
// round-trip through the transform.
struct PixelPos {
  double col = 0.0;
  double row = 0.0;
};

// Affine map between raster pixels and the local planar frame. The origin is
// the world position of the center of pixel (0,0); rows grow southward.
class GeoTransform {
 public:
  GeoTransform() = default;
  GeoTransform(double pixel_size_x, double pixel_size_y, double origin_x,
               double origin_y, std::optional<LatLon> anchor = std::nullopt);

  double pixel_size_x() const { return pixel_size_x_; }
  double pixel_size_y() const { return pixel_size_y_; }
  double origin_x() const { return origin_x_; }
  double origin_y() const { return origin_y_; }
  const std::optional<LatLon>& anchor() const { return anchor_; }

  Point pixel_to_world(PixelPos px) const {
    return {origin_x_ + px.col * pixel_size_x_, origin_y_ - px.row * pixel_size_y_};
  }
  PixelPos world_to_pixel(Point p) const {
    return {(p.x - origin_x_) / pixel_size_x_, (origin_y_ - p.y) / pixel_size_y_};
  }

  friend bool operator==(const GeoTransform&, const GeoTransform&) = default;

 private:
  double pixel_size_x_ = kDefaultPixelSize;
  double pixel_size_y_ = kDefaultPixelSize;
  double origin_x_ = 0.0;
  double origin_y_ = 0.0;
  std::optional<LatLon> anchor_;
};

// Grayscale road-confidence grid, row-major, top-left first.
class ConfidenceRaster {
 public:
  ConfidenceRaster(int width, int height, std::vector<std::uint8_t> values,
                   GeoTransform transform = {});

  int width() const { return width_; }
  int height() const { return height_; }
  const GeoTransform& transform() const { return transform_; }
  const std::vector<std::uint8_t>& values() const { return values_; }

  std::uint8_t at(int col, int row) const {
    return values_[static_cast<std::size_t>(row) * width_ + col];
  }
  bool contains(int col, int row) const {
    return col >= 0 && row >= 0 && col < width_ && row < height_;
  }

  friend bool operator==(const ConfidenceRaster&, const ConfidenceRaster&) = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> values_;
  GeoTransform transform_;
};

// Set of road pixels. Stored as one byte per pixel (0 or 1).
class BinaryMask {
 public:
  BinaryMask(int width, int height, GeoTransform transform = {});

  int width() const { return width_; }
  int height() const { return height_; }
  const GeoTransform& transform() const { return transform_; }

  bool contains(int col, int row) const {
    return col >= 0 && row >= 0 && col < width_ && row < height_;
  }
  // Out-of-bounds reads are unset.
  bool test(int col, int row) const {
    return contains(col, row) && bits_[index(col, row)] != 0;
  }
  void set(int col, int row, bool on = true) { bits_.at(index(col, row)) = on ? 1 : 0; }

  std::size_t count() const;
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  std::size_t index(int col, int row) const {
    return static_cast<std::size_t>(row) * width_ + col;
  }

  int width_;
  int height_;
  std::vector<std::uint8_t> bits_;
  GeoTransform transform_;
};

// Binary PGM (P5, maxval 255) plus the 4-line world file.
ConfidenceRaster load_raster(const std::filesystem::path& image_path,
                             const std::filesystem::path& world_path);
GeoTransform load_world_file(const std::filesystem::path& path);

struct PgmImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;
};
PgmImage read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const PgmImage& image);
void write_world_file(const std::filesystem::path& path, const GeoTransform& transform);

void save_raster(const ConfidenceRaster& raster, const std::filesystem::path& image_path,
                 const std::filesystem::path& world_path);

// Pixel is set iff its confidence is >= threshold.
BinaryMask binarize(const ConfidenceRaster& raster, int threshold = kDefaultThreshold);

}  // namespace streetaddr

#endif  // STREETADDR_RASTER_H_
