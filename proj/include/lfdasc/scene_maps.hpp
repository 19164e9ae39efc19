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

#ifndef LFDASC_SCENE_MAPS_HPP_
#define LFDASC_SCENE_MAPS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lfdasc/core/image.hpp"
#include "lfdasc/io/pfm_io.hpp"
#include "lfdasc/io/png_io.hpp"
#include "lfdasc/manifest.hpp"

namespace lfdasc {

// Signed depth in meters relative to the screen plane: negative in front of
// the screen, positive behind it.
struct DepthMap {
  int width = 0;
  int height = 0;
  std::vector<float> z;

  DepthMap() = default;
  DepthMap(int w, int h, float fill = 0.0f)
      : width(w), height(h), z(static_cast<size_t>(w) * h, fill) {}

  float& at(int u, int v) { return z[static_cast<size_t>(v) * width + u]; }
  float at(int u, int v) const {
    return z[static_cast<size_t>(v) * width + u];
  }
};

// Object labels as packed 0xRRGGBB colors; the background label (if any) is
// excluded from object extraction. A label's pixels need not be connected.
struct SegmentationMap {
  int width = 0;
  int height = 0;
  std::vector<uint32_t> labels;
  std::optional<uint32_t> background;
  std::vector<uint32_t> exclude;

  SegmentationMap() = default;
  SegmentationMap(int w, int h, uint32_t fill = 0)
      : width(w), height(h), labels(static_cast<size_t>(w) * h, fill) {}

  uint32_t& at(int u, int v) {
    return labels[static_cast<size_t>(v) * width + u];
  }
  uint32_t at(int u, int v) const {
    return labels[static_cast<size_t>(v) * width + u];
  }
};

struct PixelCoord {
  int u;
  int v;
};

// One labelled object: its pixel set and signed depth extremes.
struct ObjectRegion {
  uint32_t label = 0;
  std::vector<PixelCoord> pixels;
  double z_min = 0.0;
  double z_max = 0.0;

  size_t area() const { return pixels.size(); }
};

// Splits the non-background pixels into one region per distinct label and
// records each region's depth extremes.
inline std::vector<ObjectRegion> extract_objects(const SegmentationMap& seg,
                                                 const DepthMap& depth) {
  if (seg.width != depth.width || seg.height != depth.height)
    throw std::invalid_argument(
        "extract_objects: segmentation is " + std::to_string(seg.width) + "x" +
        std::to_string(seg.height) + " but depth is " +
        std::to_string(depth.width) + "x" + std::to_string(depth.height));

  auto skipped = [&](uint32_t label) {
    if (seg.background && *seg.background == label) return true;
    return std::find(seg.exclude.begin(), seg.exclude.end(), label) !=
           seg.exclude.end();
  };

  std::map<uint32_t, ObjectRegion> regions;  // keyed by label, so label-sorted
  for (int v = 0; v < seg.height; ++v) {
    for (int u = 0; u < seg.width; ++u) {
      const uint32_t label = seg.at(u, v);
      if (skipped(label)) continue;
      const double z = depth.at(u, v);
      if (!std::isfinite(z))
        throw std::runtime_error("depth map has a non-finite value at (" +
                                 std::to_string(u) + ", " + std::to_string(v) +
                                 ")");
      auto [it, inserted] = regions.try_emplace(label);
      ObjectRegion& r = it->second;
      if (inserted) {
        r.label = label;
        r.z_min = z;
        r.z_max = z;
      } else {
        r.z_min = std::min(r.z_min, z);
        r.z_max = std::max(r.z_max, z);
      }
      r.pixels.push_back({u, v});
    }
  }

  if (regions.empty())
    throw std::runtime_error(
        "extract_objects: no objects left after background exclusion");

  std::vector<ObjectRegion> out;
  out.reserve(regions.size());
  for (auto& [label, region] : regions) out.push_back(std::move(region));
  return out;
}

// Decodes the manifest's depth map and converts it to signed screen-relative
// meters.
inline DepthMap load_depth_map(const Manifest& m) {
  if (!m.depth)
    throw std::runtime_error("manifest '" + m.scene +
                             "' declares no depth map");
  const DepthSpec& spec = *m.depth;
  const std::string path = m.resolve(spec.path).string();

  DepthMap out;
  if (spec.encoding == DepthSpec::Encoding::kPfm) {
    FloatMap raw = read_pfm(path);
    out.width = raw.width;
    out.height = raw.height;
    out.z = std::move(raw.values);
  } else {
    Gray16 raw = read_png_gray16(path);
    out.width = raw.width;
    out.height = raw.height;
    out.z.resize(raw.values.size());
    for (size_t i = 0; i < raw.values.size(); ++i)
      out.z[i] = static_cast<float>(raw.values[i] / 65535.0 * spec.scale +
                                    spec.offset);
  }

  if (spec.convention == DepthSpec::Convention::kCameraDistance) {
    const float shift = static_cast<float>(spec.screen_distance_m);
    for (float& z : out.z) z -= shift;
  }
  return out;
}

inline SegmentationMap load_segmentation_map(const Manifest& m) {
  if (!m.segmentation)
    throw std::runtime_error("manifest '" + m.scene +
                             "' declares no segmentation map");
  const SegmentationSpec& spec = *m.segmentation;
  LabelMapData raw = read_png_labels(m.resolve(spec.path).string());

  SegmentationMap out;
  out.width = raw.width;
  out.height = raw.height;
  out.labels = std::move(raw.labels);
  out.background = spec.background;
  out.exclude = spec.exclude;
  return out;
}

}  // namespace lfdasc

#endif  // LFDASC_SCENE_MAPS_HPP_
