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

#ifndef LFDASC_GEOMETRIC_FACTORS_HPP_
#define LFDASC_GEOMETRIC_FACTORS_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "lfdasc/core/image.hpp"
#include "lfdasc/scene_maps.hpp"

namespace lfdasc {

// Per-object texture/geometry complexity. Entropy is over a 256-bin BT.709
// luminance histogram, so it lives in [0, 8] bits. Curvature is in units of
// meters per squared pixel pitch; values are comparable only across objects
// rendered at the same image resolution.
struct GeometricFactors {
  double entropy_bits = 0.0;
  double edge_density = 0.0;
  double curvature_std = 0.0;
};

struct NormalizedGeometricFactors {
  double entropy_norm = 0.0;
  double edge_norm = 0.0;
  double curvature_norm = 0.0;
};

// Edge pixels are Sobel responses above this fraction of the largest
// magnitude a [0,1] image can produce (|gx| and |gy| each top out at 4).
inline constexpr double kEdgeThresholdFraction = 0.1;

inline double edge_threshold() {
  return kEdgeThresholdFraction * 4.0 * std::numbers::sqrt2;
}

namespace detail {

inline void check_region(const ObjectRegion& region, int width, int height) {
  if (region.pixels.empty())
    throw std::invalid_argument("object region is empty");
  for (const PixelCoord& p : region.pixels)
    if (p.u < 0 || p.u >= width || p.v < 0 || p.v >= height)
      throw std::out_of_range("object region pixel (" + std::to_string(p.u) +
                              ", " + std::to_string(p.v) +
                              ") outside the map bounds");
}

inline int luma_bin(double luma) {
  const long bin = std::lround(std::clamp(luma, 0.0, 1.0) * 255.0);
  return static_cast<int>(bin);
}

}  // namespace detail

// Shannon entropy (bits) of the region's 8-bit luminance histogram.
inline double entropy(const Image& image, const ObjectRegion& region) {
  detail::check_region(region, image.width, image.height);
  std::array<size_t, 256> histogram{};
  for (const PixelCoord& p : region.pixels) {
    const double luma = luminance(image.at(p.u, p.v, 0), image.at(p.u, p.v, 1),
                                  image.at(p.u, p.v, 2));
    ++histogram[detail::luma_bin(luma)];
  }
  const double total = static_cast<double>(region.area());
  double bits = 0.0;
  for (size_t count : histogram) {
    if (count == 0) continue;
    const double p = static_cast<double>(count) / total;
    bits -= p * std::log2(p);
  }
  return bits;
}

// Fraction of the region's pixels whose Sobel gradient magnitude clears the
// edge threshold. The gradient is taken on the whole image's luminance with
// replicated borders, then sampled inside the region.
inline double edge_density(const Image& image, const ObjectRegion& region) {
  detail::check_region(region, image.width, image.height);
  const std::vector<double> mag = detail::sobel_magnitude(image);
  const double threshold = edge_threshold();
  size_t edges = 0;
  for (const PixelCoord& p : region.pixels)
    if (mag[static_cast<size_t>(p.v) * image.width + p.u] > threshold) ++edges;
  return static_cast<double>(edges) / static_cast<double>(region.area());
}

struct Hessian2x2 {
  double zuu = 0.0;
  double zuv = 0.0;
  double zvv = 0.0;

  double mean_curvature() const { return 0.5 * (zuu + zvv); }
};

// Second differences of the depth surface at every region pixel. Central
// stencils are used where the neighbors stay inside the region; otherwise the
// stencil falls back to the one-sided variant that does, so depth
// discontinuities outside the object never leak in. Affine depth is
// annihilated by every variant.
inline std::vector<Hessian2x2> region_hessians(const DepthMap& depth,
                                               const ObjectRegion& region) {
  detail::check_region(region, depth.width, depth.height);

  std::vector<uint8_t> in(static_cast<size_t>(depth.width) * depth.height, 0);
  for (const PixelCoord& p : region.pixels)
    in[static_cast<size_t>(p.v) * depth.width + p.u] = 1;
  auto inside = [&](int u, int v) {
    return u >= 0 && u < depth.width && v >= 0 && v < depth.height &&
           in[static_cast<size_t>(v) * depth.width + u] != 0;
  };
  auto z = [&](int u, int v) { return static_cast<double>(depth.at(u, v)); };

  int min_u = depth.width, max_u = -1, min_v = depth.height, max_v = -1;
  for (const PixelCoord& p : region.pixels) {
    min_u = std::min(min_u, p.u);
    max_u = std::max(max_u, p.u);
    min_v = std::min(min_v, p.v);
    max_v = std::max(max_v, p.v);
  }
  if (max_u - min_u < 2 || max_v - min_v < 2)
    throw std::invalid_argument(
        "region_hessians: region extent below 3x3, second differences "
        "undefined");

  std::vector<Hessian2x2> out;
  out.reserve(region.pixels.size());
  for (const PixelCoord& p : region.pixels) {
    const int u = p.u, v = p.v;
    Hessian2x2 h;

    if (inside(u - 1, v) && inside(u + 1, v))
      h.zuu = z(u - 1, v) - 2.0 * z(u, v) + z(u + 1, v);
    else if (inside(u + 1, v) && inside(u + 2, v))
      h.zuu = z(u, v) - 2.0 * z(u + 1, v) + z(u + 2, v);
    else if (inside(u - 1, v) && inside(u - 2, v))
      h.zuu = z(u, v) - 2.0 * z(u - 1, v) + z(u - 2, v);

    if (inside(u, v - 1) && inside(u, v + 1))
      h.zvv = z(u, v - 1) - 2.0 * z(u, v) + z(u, v + 1);
    else if (inside(u, v + 1) && inside(u, v + 2))
      h.zvv = z(u, v) - 2.0 * z(u, v + 1) + z(u, v + 2);
    else if (inside(u, v - 1) && inside(u, v - 2))
      h.zvv = z(u, v) - 2.0 * z(u, v - 1) + z(u, v - 2);

    if (inside(u - 1, v - 1) && inside(u + 1, v - 1) && inside(u - 1, v + 1) &&
        inside(u + 1, v + 1))
      h.zuv = 0.25 * (z(u + 1, v + 1) - z(u + 1, v - 1) - z(u - 1, v + 1) +
                      z(u - 1, v - 1));
    else if (inside(u + 1, v) && inside(u, v + 1) && inside(u + 1, v + 1))
      h.zuv = z(u + 1, v + 1) - z(u + 1, v) - z(u, v + 1) + z(u, v);
    else if (inside(u + 1, v) && inside(u, v - 1) && inside(u + 1, v - 1))
      h.zuv = z(u + 1, v) - z(u + 1, v - 1) - z(u, v) + z(u, v - 1);
    else if (inside(u - 1, v) && inside(u, v + 1) && inside(u - 1, v + 1))
      h.zuv = z(u, v + 1) - z(u, v) - z(u - 1, v + 1) + z(u - 1, v);
    else if (inside(u - 1, v) && inside(u, v - 1) && inside(u - 1, v - 1))
      h.zuv = z(u, v) - z(u, v - 1) - z(u - 1, v) + z(u - 1, v - 1);

    out.push_back(h);
  }
  return out;
}

// Population standard deviation of the per-pixel mean curvature. For a
// symmetric 2x2 Hessian the eigenvalue average equals half the trace, so no
// eigen solve is needed.
inline double curvature_std(const DepthMap& depth, const ObjectRegion& region) {
  const std::vector<Hessian2x2> hessians = region_hessians(depth, region);
  std::vector<double> curvature;
  curvature.reserve(hessians.size());
  for (const Hessian2x2& h : hessians) curvature.push_back(h.mean_curvature());
  return detail::mean_stddev(curvature.begin(), curvature.end()).second;
}

inline GeometricFactors geometric_factors(const Image& image,
                                          const DepthMap& depth,
                                          const ObjectRegion& region) {
  return {entropy(image, region), edge_density(image, region),
          curvature_std(depth, region)};
}

// Min-max normalization of each factor across the scene's objects. When a
// factor is constant over all objects (including single-object scenes) every
// object maps to the neutral 0.5.
inline std::vector<NormalizedGeometricFactors> normalize_factors(
    const std::vector<GeometricFactors>& all_objects) {
  if (all_objects.empty())
    throw std::invalid_argument("normalize_factors: no objects");

  auto normalized = [&](auto member) {
    double lo = all_objects.front().*member, hi = lo;
    for (const GeometricFactors& g : all_objects) {
      lo = std::min(lo, g.*member);
      hi = std::max(hi, g.*member);
    }
    std::vector<double> out;
    out.reserve(all_objects.size());
    for (const GeometricFactors& g : all_objects)
      out.push_back(hi > lo ? (g.*member - lo) / (hi - lo) : 0.5);
    return out;
  };

  const std::vector<double> s = normalized(&GeometricFactors::entropy_bits);
  const std::vector<double> e = normalized(&GeometricFactors::edge_density);
  const std::vector<double> c = normalized(&GeometricFactors::curvature_std);

  std::vector<NormalizedGeometricFactors> out(all_objects.size());
  for (size_t i = 0; i < all_objects.size(); ++i) out[i] = {s[i], e[i], c[i]};
  return out;
}

}  // namespace lfdasc

#endif  // LFDASC_GEOMETRIC_FACTORS_HPP_
