// Copyright 2026 The lfdasc Authors.
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

#include "lfdasc/position_factors.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace lfdasc {
namespace {

ObjectRegion full_region(const DepthMap& depth) {
  ObjectRegion region;
  region.label = 1;
  region.z_min = depth.z.front();
  region.z_max = depth.z.front();
  for (int v = 0; v < depth.height; ++v)
    for (int u = 0; u < depth.width; ++u) {
      region.pixels.push_back({u, v});
      region.z_min = std::min<double>(region.z_min, depth.at(u, v));
      region.z_max = std::max<double>(region.z_max, depth.at(u, v));
    }
  return region;
}

TEST(DofOverlap, AllInside) {
  DepthMap depth(4, 4, 0.05f);
  EXPECT_DOUBLE_EQ(dof_overlap(full_region(depth), depth, 0.2), 1.0);
}

TEST(DofOverlap, NoneInside) {
  DepthMap depth(4, 4, 0.5f);
  EXPECT_DOUBLE_EQ(dof_overlap(full_region(depth), depth, 0.2), 0.0);
}

TEST(DofOverlap, HalfInsideByExhaustiveCount) {
  DepthMap depth(4, 4);
  for (int v = 0; v < 4; ++v)
    for (int u = 0; u < 4; ++u)
      depth.at(u, v) = v < 2 ? 0.05f : 0.5f;  // top half in, bottom half out
  const ObjectRegion region = full_region(depth);
  const double d_phi = 0.2;

  size_t inside = 0;
  for (const PixelCoord& p : region.pixels)
    if (std::abs(depth.at(p.u, p.v)) <= d_phi / 2.0) ++inside;
  ASSERT_EQ(inside, 8u);
  EXPECT_DOUBLE_EQ(dof_overlap(region, depth, d_phi), 0.5);
}

TEST(DofOverlap, FullIffEveryPixelInsideSlab) {
  std::mt19937 rng(41);
  std::uniform_real_distribution<float> dist(-0.3f, 0.3f);
  for (int trial = 0; trial < 200; ++trial) {
    DepthMap depth(3, 3);
    for (float& z : depth.z) z = dist(rng);
    const ObjectRegion region = full_region(depth);
    const double d_phi = 0.2;
    bool all_inside = true;
    for (float z : depth.z)
      if (std::abs(z) > d_phi / 2.0) all_inside = false;
    EXPECT_EQ(dof_overlap(region, depth, d_phi) == 1.0, all_inside);
  }
}

TEST(DofDistance, ZeroOnEitherBoundary) {
  EXPECT_DOUBLE_EQ(dof_distance(0.1, 0.2), 0.0);
  EXPECT_DOUBLE_EQ(dof_distance(-0.1, 0.2), 0.0);
}

TEST(DofDistance, QuarterMeterOutside) {
  EXPECT_DOUBLE_EQ(dof_distance(0.25, 0.2), 0.75);
}

TEST(DofDistance, ScreenPlaneIsHalf) {
  EXPECT_DOUBLE_EQ(dof_distance(0.0, 0.2), 0.5);
}

TEST(DofDistance, NonNegativeEverywhere) {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> z(-2.0, 2.0);
  std::uniform_real_distribution<double> d(0.01, 1.0);
  for (int trial = 0; trial < 1000; ++trial)
    EXPECT_GE(dof_distance(z(rng), d(rng)), 0.0);
}

TEST(ObjectSpan, FlatObjectIsZero) {
  ObjectRegion region;
  region.z_min = region.z_max = 0.07;
  EXPECT_DOUBLE_EQ(object_span(region, 0.2), 0.0);
}

TEST(ObjectSpan, FullSlabIsOne) {
  ObjectRegion region;
  region.z_min = -0.1;
  region.z_max = 0.1;
  EXPECT_DOUBLE_EQ(object_span(region, 0.2), 1.0);
}

TEST(ObjectSpan, DoublingSlabHalvesSpan) {
  ObjectRegion region;
  region.z_min = -0.05;
  region.z_max = 0.25;
  EXPECT_DOUBLE_EQ(object_span(region, 0.4), 0.5 * object_span(region, 0.2));
}

TEST(ObjectSpan, InvariantUnderDepthTranslation) {
  ObjectRegion region;
  region.z_min = -0.03;
  region.z_max = 0.12;
  ObjectRegion shifted = region;
  shifted.z_min += 0.5;
  shifted.z_max += 0.5;
  EXPECT_DOUBLE_EQ(object_span(region, 0.2), object_span(shifted, 0.2));
}

// Moving the object within the image plane must not change any factor.
TEST(PositionFactors, InvariantUnderInPlaneTranslation) {
  DepthMap depth(8, 8, 0.5f);
  auto stamp = [&](int x0, int y0) {
    DepthMap d = depth;
    ObjectRegion region;
    region.label = 1;
    for (int v = 0; v < 3; ++v)
      for (int u = 0; u < 3; ++u) {
        d.at(x0 + u, y0 + v) = 0.02f * (u + v);
        region.pixels.push_back({x0 + u, y0 + v});
      }
    region.z_min = 0.0;
    region.z_max = 0.08;
    return std::make_pair(d, region);
  };
  const auto [d1, r1] = stamp(0, 0);
  const auto [d2, r2] = stamp(4, 5);
  const PositionFactors f1 = position_factors(r1, d1, 0.2);
  const PositionFactors f2 = position_factors(r2, d2, 0.2);
  EXPECT_DOUBLE_EQ(f1.dof_overlap, f2.dof_overlap);
  EXPECT_DOUBLE_EQ(f1.d_min, f2.d_min);
  EXPECT_DOUBLE_EQ(f1.d_max, f2.d_max);
  EXPECT_DOUBLE_EQ(f1.span_l, f2.span_l);
}

TEST(PositionFactors, RejectsNonPositiveSlab) {
  DepthMap depth(2, 2, 0.0f);
  const ObjectRegion region = full_region(depth);
  EXPECT_THROW(dof_overlap(region, depth, 0.0), std::invalid_argument);
  EXPECT_THROW(dof_distance(0.1, -1.0), std::invalid_argument);
  EXPECT_THROW(object_span(region, 0.0), std::invalid_argument);
}

}  // namespace
}  // namespace lfdasc
