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

#ifndef LFDASC_CHARACTERIZE_HPP_
#define LFDASC_CHARACTERIZE_HPP_

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "lfdasc/core/image.hpp"
#include "lfdasc/lightfield.hpp"

namespace lfdasc {

// Heterogeneity features used to sanity-check a dataset before running
// studies on it: spatial detail per view, view-to-view change along the
// angular axis, and color/contrast statistics of the central view.

// Standard deviation of the Sobel gradient magnitude over the view's
// luminance. Border pixels are excluded so images with constant gradient
// (e.g. a linear ramp) report exactly zero.
inline double spatial_information(const Image& view) {
  if (view.empty())
    throw std::invalid_argument("spatial_information: empty view");
  if (view.width < 3 || view.height < 3) return 0.0;
  const std::vector<double> mag = detail::sobel_magnitude(view);
  std::vector<double> interior;
  interior.reserve(static_cast<size_t>(view.width - 2) * (view.height - 2));
  for (int v = 1; v < view.height - 1; ++v)
    for (int u = 1; u < view.width - 1; ++u)
      interior.push_back(mag[static_cast<size_t>(v) * view.width + u]);
  return detail::mean_stddev(interior.begin(), interior.end()).second;
}

// Standard deviation of the per-pixel luminance difference between two
// views that are adjacent in the angular domain.
inline double temporal_information(const Image& view_a, const Image& view_b) {
  if (!view_a.same_size(view_b))
    throw std::invalid_argument(
        "temporal_information: views differ in size (" +
        std::to_string(view_a.width) + "x" + std::to_string(view_a.height) +
        " vs " + std::to_string(view_b.width) + "x" +
        std::to_string(view_b.height) + ")");
  const std::vector<double> la = luminance_values(view_a);
  const std::vector<double> lb = luminance_values(view_b);
  std::vector<double> diff(la.size());
  for (size_t i = 0; i < diff.size(); ++i) diff[i] = la[i] - lb[i];
  return detail::mean_stddev(diff.begin(), diff.end()).second;
}

// Opponent-channel colorfulness: sqrt(sigma_rg^2 + sigma_yb^2)
// + 0.3 * sqrt(mu_rg^2 + mu_yb^2) with rg = R - G, yb = (R + G)/2 - B.
// Identically zero on grayscale input and homogeneous of degree one in RGB.
inline double colorfulness(const Image& view) {
  if (view.empty()) throw std::invalid_argument("colorfulness: empty view");
  std::vector<double> rg, yb;
  const size_t npx = static_cast<size_t>(view.width) * view.height;
  rg.reserve(npx);
  yb.reserve(npx);
  for (size_t i = 0; i < npx; ++i) {
    const double r = view.rgb[i * 3], g = view.rgb[i * 3 + 1],
                 b = view.rgb[i * 3 + 2];
    rg.push_back(r - g);
    yb.push_back(0.5 * (r + g) - b);
  }
  const auto [mu_rg, sd_rg] = detail::mean_stddev(rg.begin(), rg.end());
  const auto [mu_yb, sd_yb] = detail::mean_stddev(yb.begin(), yb.end());
  return std::sqrt(sd_rg * sd_rg + sd_yb * sd_yb) +
         0.3 * std::sqrt(mu_rg * mu_rg + mu_yb * mu_yb);
}

// RMS contrast: standard deviation of the luminance distribution.
inline double contrast(const Image& view) {
  if (view.empty()) throw std::invalid_argument("contrast: empty view");
  const std::vector<double> luma = luminance_values(view);
  return detail::mean_stddev(luma.begin(), luma.end()).second;
}

struct ViewStat {
  int s = 0;
  int t = 0;
  double value = 0.0;
};

struct PairStat {
  int s = 0;  // left view of the (s, s+1) pair at row t
  int t = 0;
  double value = 0.0;
};

struct CharacterizationReport {
  std::string scene;
  std::vector<ViewStat> si;  // one per view, grid order
  double si_max = 0.0;
  double si_mean = 0.0;
  std::vector<PairStat> ti;  // one per horizontal adjacent pair
  double ti_max = 0.0;
  double ti_mean = 0.0;
  double cf = 0.0;        // central view
  double contrast = 0.0;  // central view
};

// SI for every view and TI for every horizontally adjacent pair; CF and
// contrast are taken on the central view.
inline CharacterizationReport characterize(const LightField& lf,
                                           const std::string& scene = "") {
  CharacterizationReport report;
  report.scene = scene;

  for (int t = 0; t < lf.grid_rows(); ++t)
    for (int s = 0; s < lf.grid_cols(); ++s)
      report.si.push_back({s, t, spatial_information(lf.view(s, t))});

  for (int t = 0; t < lf.grid_rows(); ++t)
    for (int s = 0; s + 1 < lf.grid_cols(); ++s)
      report.ti.push_back(
          {s, t, temporal_information(lf.view(s, t), lf.view(s + 1, t))});

  auto fold = [](const auto& items, double& out_max, double& out_mean) {
    if (items.empty()) return;
    double sum = 0.0, mx = items.front().value;
    for (const auto& item : items) {
      sum += item.value;
      mx = std::max(mx, item.value);
    }
    out_max = mx;
    out_mean = sum / static_cast<double>(items.size());
  };
  fold(report.si, report.si_max, report.si_mean);
  fold(report.ti, report.ti_max, report.ti_mean);

  const Image& central =
      lf.view(lf.grid_cols() / 2, lf.grid_rows() / 2);
  report.cf = colorfulness(central);
  report.contrast = contrast(central);
  return report;
}

}  // namespace lfdasc

#endif  // LFDASC_CHARACTERIZE_HPP_
