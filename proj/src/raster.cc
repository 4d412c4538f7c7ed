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

#include "streetaddr/raster.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "streetaddr/error.h"

namespace streetaddr {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(fmt::format("cannot open {}", path.string()));
  return std::string(std::istreambuf_iterator<char>(in), {});
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

// Reads one whitespace-delimited decimal header token, skipping '#' comments.
long read_header_int(const std::string& data, std::size_t& pos, const char* what) {
  for (;;) {
    while (pos < data.size() && is_space(data[pos])) ++pos;
    if (pos < data.size() && data[pos] == '#') {
      while (pos < data.size() && data[pos] != '\n') ++pos;
      continue;
    }
    break;
  }
  long value = 0;
  auto [end, ec] = std::from_chars(data.data() + pos, data.data() + data.size(), value);
  if (ec != std::errc() || end == data.data() + pos) {
    throw ParseError(fmt::format("PGM header: bad {}", what));
  }
  pos = static_cast<std::size_t>(end - data.data());
  return value;
}

double parse_double(std::string_view token, int line) {
  double v = 0.0;
  auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || end != token.data() + token.size() || !std::isfinite(v)) {
    throw ParseError(fmt::format("world file line {}: not a decimal number", line));
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

GeoTransform::GeoTransform(double pixel_size_x, double pixel_size_y, double origin_x,
                           double origin_y, std::optional<LatLon> anchor)
    : pixel_size_x_(pixel_size_x),
      pixel_size_y_(pixel_size_y),
      origin_x_(origin_x),
      origin_y_(origin_y),
      anchor_(anchor) {
  if (!(pixel_size_x > 0.0) || !(pixel_size_y > 0.0)) {
    throw ValidationError(
        fmt::format("pixel size must be positive, got ({}, {})", pixel_size_x, pixel_size_y));
  }
}

ConfidenceRaster::ConfidenceRaster(int width, int height, std::vector<std::uint8_t> values,
                                   GeoTransform transform)
    : width_(width), height_(height), values_(std::move(values)), transform_(transform) {
  if (width <= 0 || height <= 0) {
    throw ValidationError(fmt::format("raster dimensions must be positive, got {}x{}", width,
                                      height));
  }
  if (values_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw ValidationError(fmt::format("raster payload has {} values, expected {}x{}",
                                      values_.size(), width, height));
  }
}

BinaryMask::BinaryMask(int width, int height, GeoTransform transform)
    : width_(width),
      height_(height),
      bits_(static_cast<std::size_t>(std::max(width, 0)) * std::max(height, 0), 0),
      transform_(transform) {
  if (width <= 0 || height <= 0) {
    throw ValidationError(fmt::format("mask dimensions must be positive, got {}x{}", width,
                                      height));
  }
}

std::size_t BinaryMask::count() const {
  std::size_t n = 0;
  for (auto b : bits_) n += b;
  return n;
}

PgmImage read_pgm(const std::filesystem::path& path) {
  const std::string data = read_file(path);
  if (data.size() < 2 || data[0] != 'P' || data[1] != '5') {
    throw ParseError(fmt::format("{}: not a binary PGM (missing P5 magic)", path.string()));
  }
  std::size_t pos = 2;
  const long width = read_header_int(data, pos, "width");
  const long height = read_header_int(data, pos, "height");
  const long maxval = read_header_int(data, pos, "maxval");
  if (width <= 0 || height <= 0 || width > (1 << 20) || height > (1 << 20)) {
    throw ParseError(fmt::format("PGM header: bad dimensions {}x{}", width, height));
  }
  if (maxval != 255) throw ParseError(fmt::format("PGM header: maxval {} != 255", maxval));
  if (pos >= data.size() || !is_space(data[pos])) {
    throw ParseError("PGM header: missing separator before payload");
  }
  ++pos;
  const std::size_t expected = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (data.size() - pos != expected) {
    throw ParseError(fmt::format("PGM payload has {} bytes, header declares {}x{} = {}",
                                 data.size() - pos, width, height, expected));
  }
  PgmImage img;
  img.width = static_cast<int>(width);
  img.height = static_cast<int>(height);
  img.pixels.assign(data.begin() + static_cast<std::ptrdiff_t>(pos), data.end());
  return img;
}

void write_pgm(const std::filesystem::path& path, const PgmImage& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(fmt::format("cannot write {}", path.string()));
  out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size()));
  if (!out) throw Error(fmt::format("write failed: {}", path.string()));
}

GeoTransform load_world_file(const std::filesystem::path& path) {
  const std::string data = read_file(path);
  std::vector<std::string_view> lines;
  std::string_view rest(data);
  while (!rest.empty()) {
    auto nl = rest.find('\n');
    std::string_view line = trim(rest.substr(0, nl));
    if (!line.empty()) lines.push_back(line);
    if (nl == std::string_view::npos) break;
    rest.remove_prefix(nl + 1);
  }
  if (lines.size() != 4 && lines.size() != 5) {
    throw ParseError(fmt::format("{}: world file needs 4 lines (+ optional ANCHOR), got {}",
                                 path.string(), lines.size()));
  }
  double v[4];
  for (int i = 0; i < 4; ++i) v[i] = parse_double(lines[i], i + 1);

  std::optional<LatLon> anchor;
  if (lines.size() == 5) {
    std::istringstream in{std::string(lines[4])};
    std::string tag, lat, lon, extra;
    in >> tag >> lat >> lon;
    if (tag != "ANCHOR" || lat.empty() || lon.empty() || (in >> extra)) {
      throw ParseError("world file line 5: expected 'ANCHOR <lat> <lon>'");
    }
    LatLon a{parse_double(lat, 5), parse_double(lon, 5)};
    if (std::abs(a.lat) > 90.0 || std::abs(a.lon) > 180.0) {
      throw ValidationError("world file anchor out of range");
    }
    anchor = a;
  }
  return GeoTransform(v[0], v[1], v[2], v[3], anchor);
}

void write_world_file(const std::filesystem::path& path, const GeoTransform& t) {
  std::ofstream out(path);
  if (!out) throw Error(fmt::format("cannot write {}", path.string()));
  out << fmt::format("{}\n{}\n{}\n{}\n", t.pixel_size_x(), t.pixel_size_y(), t.origin_x(),
                     t.origin_y());
  if (t.anchor()) out << fmt::format("ANCHOR {} {}\n", t.anchor()->lat, t.anchor()->lon);
}

ConfidenceRaster load_raster(const std::filesystem::path& image_path,
                             const std::filesystem::path& world_path) {
  PgmImage img = read_pgm(image_path);
  GeoTransform t = load_world_file(world_path);
  return ConfidenceRaster(img.width, img.height, std::move(img.pixels), t);
}

void save_raster(const ConfidenceRaster& raster, const std::filesystem::path& image_path,
                 const std::filesystem::path& world_path) {
  write_pgm(image_path, PgmImage{raster.width(), raster.height(), raster.values()});
  write_world_file(world_path, raster.transform());
}

BinaryMask binarize(const ConfidenceRaster& raster, int threshold) {
  BinaryMask mask(raster.width(), raster.height(), raster.transform());
  for (int r = 0; r < raster.height(); ++r) {
    for (int c = 0; c < raster.width(); ++c) {
      if (raster.at(c, r) >= threshold) mask.set(c, r);
    }
  }
  return mask;
}

}  // namespace streetaddr
