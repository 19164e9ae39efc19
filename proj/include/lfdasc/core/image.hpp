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

#ifndef LFDASC_CORE_IMAGE_HPP_
#define LFDASC_CORE_IMAGE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lfdasc {

// Interleaved RGB raster, samples in [0, 1]. Pixel (u, v): u is the column,
// v is the row, both zero-based with v growing downward.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<float> rgb;  // 3 * width * height, row-major, R G B per pixel

  Image() = default;
  Image(int w, int h, float fill = 0.0f)
      : width(w), height(h), rgb(static_cast<size_t>(w) * h * 3, fill) {
    if (w <= 0 || h <= 0) throw std::invalid_argument("Image: non-positive dimensions");
  }

  bool empty() const { return width == 0 || height == 0; }

  float& at(int u, int v, int c) {
    return rgb[(static_cast<size_t>(v) * width + u) * 3 + c];
  }
  float at(int u, int v, int c) const {
    return rgb[(static_cast<size_t>(v) * width + u) * 3 + c];
  }

  void set(int u, int v, float r, float g, float b) {
    at(u, v, 0) = r;
    at(u, v, 1) = g;
    at(u, v, 2) = b;
  }

  bool same_size(const Image& other) const {
    return width == other.width && height == other.height;
  }
};

// Scalar raster sharing Image's coordinate convention.
struct FloatMap {
  int width = 0;
  int height = 0;
  std::vector<float> values;

  FloatMap() = default;
  FloatMap(int w, int h, float fill = 0.0f)
      : width(w), height(h), values(static_cast<size_t>(w) * h, fill) {
    if (w <= 0 || h <= 0) throw std::invalid_argument("FloatMap: non-positive dimensions");
  }

  float& at(int u, int v) { return values[static_cast<size_t>(v) * width + u]; }
  float at(int u, int v) const { return values[static_cast<size_t>(v) * width + u]; }
};

// BT.709 luma of linear RGB.
inline double luminance(float r, float g, float b) {
  return 0.2126 * r + 0.7152 * g + 0.0722 * b;
}

inline std::vector<double> luminance_values(const Image& img) {
  const size_t npx = static_cast<size_t>(img.width) * img.height;
  std::vector<double> out(npx);
  for (size_t i = 0; i < npx; ++i)
    out[i] = luminance(img.rgb[i * 3], img.rgb[i * 3 + 1], img.rgb[i * 3 + 2]);
  return out;
}

namespace detail {

inline int clamp_index(int i, int n) { return std::clamp(i, 0, n - 1); }

// 3x3 Sobel gradient magnitude of the image's luminance, replicated borders,
// all arithmetic in double. Row-major, one value per pixel.
inline std::vector<double> sobel_magnitude(const Image& img) {
  const std::vector<double> luma = luminance_values(img);
  std::vector<double> mag(luma.size());
  auto px = [&](int u, int v) {
    return luma[static_cast<size_t>(clamp_index(v, img.height)) * img.width +
                clamp_index(u, img.width)];
  };
  for (int v = 0; v < img.height; ++v) {
    for (int u = 0; u < img.width; ++u) {
      double gx = -px(u - 1, v - 1) + px(u + 1, v - 1) - 2.0 * px(u - 1, v) +
                  2.0 * px(u + 1, v) - px(u - 1, v + 1) + px(u + 1, v + 1);
      double gy = -px(u - 1, v - 1) - 2.0 * px(u, v - 1) - px(u + 1, v - 1) +
                  px(u - 1, v + 1) + 2.0 * px(u, v + 1) + px(u + 1, v + 1);
      mag[static_cast<size_t>(v) * img.width + u] =
          std::sqrt(gx * gx + gy * gy);
    }
  }
  return mag;
}

// Population mean/stddev over a value range.
template <typename It>
inline std::pair<double, double> mean_stddev(It first, It last) {
  double n = 0.0, mean = 0.0;
  for (It it = first; it != last; ++it) {
    mean += static_cast<double>(*it);
    n += 1.0;
  }
  if (n == 0.0) return {0.0, 0.0};
  mean /= n;
  double var = 0.0;
  for (It it = first; it != last; ++it) {
    double d = static_cast<double>(*it) - mean;
    var += d * d;
  }
  return {mean, std::sqrt(var / n)};
}

}  // namespace detail
}  // namespace lfdasc

#endif  // LFDASC_CORE_IMAGE_HPP_
