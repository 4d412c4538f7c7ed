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

#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "streetaddr/error.h"
#include "streetaddr/raster.h"
#include "support/fixtures.h"

namespace streetaddr {
namespace {

using testing::temp_dir;

void write_text(const std::filesystem::path& p, const std::string& s) {
  std::ofstream(p, std::ios::binary) << s;
}

TEST(GeoTransform, FormulaExamples) {
  const GeoTransform unit(1.0, 1.0, 0.0, 0.0);
  EXPECT_EQ(unit.pixel_to_world({3, 4}), (Point{3, -4}));
  const GeoTransform t(0.5, 0.5, 100.0, 200.0);
  EXPECT_EQ(t.pixel_to_world({10, 20}), (Point{105, 190}));
}

TEST(GeoTransform, RejectsNonPositivePixelSize) {
  EXPECT_THROW(GeoTransform(0.0, 0.5, 0, 0), ValidationError);
  EXPECT_THROW(GeoTransform(0.5, -1.0, 0, 0), ValidationError);
}

TEST(GeoTransform, RoundTripRandomPixels) {
  const GeoTransform t(0.37, 0.52, -1234.5, 987.25);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 5000.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const PixelPos p{u(rng), u(rng)};
    const PixelPos q = t.world_to_pixel(t.pixel_to_world(p));
    worst = std::max({worst, std::abs(q.col - p.col), std::abs(q.row - p.row)});
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(LoadRaster, TwoByTwoReadback) {
  const auto dir = temp_dir("raster");
  write_text(dir / "a.pgm", std::string("P5\n2 2\n255\n") + std::string("\x00\xff\x80\x07", 4));
  write_text(dir / "a.wld", "0.5\n0.5\n0\n0\n");
  const ConfidenceRaster r = load_raster(dir / "a.pgm", dir / "a.wld");
  EXPECT_EQ(r.width(), 2);
  EXPECT_EQ(r.height(), 2);
  EXPECT_EQ(r.at(1, 0), 255);
  EXPECT_EQ(r.at(0, 1), 128);
  EXPECT_EQ(r.at(1, 1), 7);
  EXPECT_FALSE(r.transform().anchor().has_value());
}

TEST(LoadRaster, OriginIsCenterOfFirstPixel) {
  const auto dir = temp_dir("raster");
  write_text(dir / "b.pgm", std::string("P5\n1 1\n255\n") + '\x09');
  write_text(dir / "b.wld", "0.5\n0.5\n0\n0\n");
  const ConfidenceRaster r = load_raster(dir / "b.pgm", dir / "b.wld");
  EXPECT_EQ(r.transform().pixel_to_world({0, 0}), (Point{0, 0}));
}

TEST(LoadRaster, PayloadShortByOneByte) {
  const auto dir = temp_dir("raster");
  write_text(dir / "c.pgm", "P5\n10 10\n255\n" + std::string(99, '\x01'));
  write_text(dir / "c.wld", "0.5\n0.5\n0\n0\n");
  EXPECT_THROW(load_raster(dir / "c.pgm", dir / "c.wld"), ParseError);
}

TEST(LoadRaster, MalformedHeaders) {
  const auto dir = temp_dir("raster");
  write_text(dir / "c.wld", "0.5\n0.5\n0\n0\n");
  for (const std::string bad : {"P2\n1 1\n255\n\x01", "P5\n1 1\n65535\n\x01\x01", "P5\n-1 1\n255\n",
                                "P5\n1\n", "", "P5 x y 255\n"}) {
    write_text(dir / "d.pgm", bad);
    EXPECT_THROW(load_raster(dir / "d.pgm", dir / "c.wld"), ParseError) << bad;
  }
}

TEST(LoadRaster, HeaderCommentsAreSkipped) {
  const auto dir = temp_dir("raster");
  write_text(dir / "e.pgm", std::string("P5 # made by hand\n# size next\n1 2\n255\n") + "\x05\x06");
  const PgmImage img = read_pgm(dir / "e.pgm");
  EXPECT_EQ(img.width, 1);
  EXPECT_EQ(img.height, 2);
  EXPECT_EQ(img.pixels, (std::vector<std::uint8_t>{5, 6}));
}

TEST(WorldFile, NonPositivePixelSizeIsValidationError) {
  const auto dir = temp_dir("raster");
  write_text(dir / "f.wld", "0\n0.5\n0\n0\n");
  EXPECT_THROW(load_world_file(dir / "f.wld"), ValidationError);
}

TEST(WorldFile, MalformedIsParseError) {
  const auto dir = temp_dir("raster");
  for (const std::string bad : {"0.5\n0.5\n0\n", "0.5\nabc\n0\n0\n", "0.5\n0.5\n0\n0\nANCHOR 1\n",
                                "0.5\n0.5\n0\n0\nFOO 1 2\n"}) {
    write_text(dir / "g.wld", bad);
    EXPECT_THROW(load_world_file(dir / "g.wld"), ParseError) << bad;
  }
}

TEST(WorldFile, AnchorLine) {
  const auto dir = temp_dir("raster");
  write_text(dir / "h.wld", "0.5\n0.5\n10\n20\nANCHOR 20.9 74.77\n");
  const GeoTransform t = load_world_file(dir / "h.wld");
  ASSERT_TRUE(t.anchor().has_value());
  EXPECT_DOUBLE_EQ(t.anchor()->lat, 20.9);
  EXPECT_DOUBLE_EQ(t.anchor()->lon, 74.77);
  EXPECT_DOUBLE_EQ(t.origin_x(), 10.0);
}

TEST(SaveRaster, BitExactRoundTrip) {
  const auto dir = temp_dir("raster");
  std::mt19937 rng(3);
  std::vector<std::uint8_t> v(37 * 11);
  for (auto& x : v) x = static_cast<std::uint8_t>(rng());
  const ConfidenceRaster r(37, 11, v, GeoTransform(0.3, 0.7, -5.125, 1e6 + 0.1, LatLon{-33.9, 151.2}));
  save_raster(r, dir / "r.pgm", dir / "r.wld");
  EXPECT_EQ(load_raster(dir / "r.pgm", dir / "r.wld"), r);
}

TEST(Binarize, ComparisonSemantics) {
  const ConfidenceRaster r(2, 1, {130, 127});
  const BinaryMask m = binarize(r, 128);
  EXPECT_TRUE(m.test(0, 0));
  EXPECT_FALSE(m.test(1, 0));
  EXPECT_EQ(m.count(), 1u);
}

TEST(Binarize, AllZeroIsEmpty) {
  const ConfidenceRaster r(4, 3, std::vector<std::uint8_t>(12, 0));
  EXPECT_EQ(binarize(r, 1).count(), 0u);
}

TEST(Binarize, AntiAliasedLineMatchesPerPixelOracle) {
  const GeoTransform t(0.5, 0.5, 0.0, 40.0);
  const ConfidenceRaster r =
      testing::render_roads({{{3.0, 5.0}, {37.0, 31.0}}}, t, 81, 81, 1.0, 2.0);
  std::size_t expect = 0;
  for (int row = 0; row < 81; ++row) {
    for (int col = 0; col < 81; ++col) expect += r.at(col, row) >= 128 ? 1 : 0;
  }
  const BinaryMask m = binarize(r, 128);
  EXPECT_EQ(m.count(), expect);
  EXPECT_EQ(m.transform(), r.transform());
}

TEST(Binarize, MonotoneInThreshold) {
  const ConfidenceRaster r = testing::grid_city_raster();
  std::size_t prev = binarize(r, 0).count();
  for (int th = 15; th <= 255; th += 15) {
    const BinaryMask m = binarize(r, th);
    EXPECT_LE(m.count(), prev);
    prev = m.count();
  }
}

TEST(BinaryMask, OutOfBoundsReadsAreUnset) {
  BinaryMask m(3, 3);
  m.set(2, 2);
  EXPECT_TRUE(m.test(2, 2));
  EXPECT_FALSE(m.test(3, 2));
  EXPECT_FALSE(m.test(-1, 0));
}

}  // namespace
}  // namespace streetaddr
