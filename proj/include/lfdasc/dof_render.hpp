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

#ifndef LFDASC_DOF_RENDER_HPP_
#define LFDASC_DOF_RENDER_HPP_

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lfdasc/lightfield.hpp"

namespace lfdasc {

// Angular-domain averaging footprint: the grid cells within Euclidean
// distance r of the center, clipped to the grid. The center itself is always
// a member, so the view count M is at least 1.
struct CircularMask {
  int radius = 0;
  int center_s = 0;
  int center_t = 0;
  std::vector<std::pair<int, int>> members;  // (s, t), row-major order

  int view_count() const { return static_cast<int>(members.size()); }
};

inline CircularMask circular_mask(int radius, int center_s, int center_t,
                                  int grid_cols, int grid_rows) {
  if (radius < 0)
    throw std::invalid_argument("circular_mask: radius must be non-negative");
  if (center_s < 0 || center_s >= grid_cols || center_t < 0 ||
      center_t >= grid_rows)
    throw std::out_of_range("circular_mask: center (s=" +
                            std::to_string(center_s) +
                            ", t=" + std::to_string(center_t) +
                            ") outside the " + std::to_string(grid_cols) + "x" +
                            std::to_string(grid_rows) + " grid");

  CircularMask mask;
  mask.radius = radius;
  mask.center_s = center_s;
  mask.center_t = center_t;
  const long long r2 = static_cast<long long>(radius) * radius;
  for (int t = 0; t < grid_rows; ++t) {
    for (int s = 0; s < grid_cols; ++s) {
      const long long ds = s - center_s;
      const long long dt = t - center_t;
      if (ds * ds + dt * dt <= r2) mask.members.emplace_back(s, t);
    }
  }
  return mask;
}

// Pixel-wise mean of the mask's member views, each weighted 1/M. Sums are
// accumulated in double, row-major over members, and narrowed to float once.
inline Image filter_view(const LightField& lf, int radius, int center_s,
                         int center_t) {
  const CircularMask mask =
      circular_mask(radius, center_s, center_t, lf.grid_cols(), lf.grid_rows());
  const double m = static_cast<double>(mask.view_count());

  Image out(lf.view_width, lf.view_height);
  const size_t n = out.rgb.size();
  std::vector<double> sum(n, 0.0);
  for (const auto& [s, t] : mask.members) {
    const Image& v = lf.view(s, t);
    for (size_t i = 0; i < n; ++i) sum[i] += static_cast<double>(v.rgb[i]);
  }
  for (size_t i = 0; i < n; ++i)
    out.rgb[i] = static_cast<float>(sum[i] / m);
  return out;
}

// Applies the circular filter at every grid position. The input is untouched;
// the output grid keeps the capture geometry.
inline LightField render_all(const LightField& lf, int radius) {
  LightField out;
  out.capture = lf.capture;
  out.view_width = lf.view_width;
  out.view_height = lf.view_height;
  out.views.reserve(lf.views.size());
  for (int t = 0; t < lf.grid_rows(); ++t)
    for (int s = 0; s < lf.grid_cols(); ++s)
      out.views.push_back(filter_view(lf, radius, s, t));
  return out;
}

}  // namespace lfdasc

#endif  // LFDASC_DOF_RENDER_HPP_
