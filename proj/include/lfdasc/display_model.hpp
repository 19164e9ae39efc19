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

#ifndef LFDASC_DISPLAY_MODEL_HPP_
#define LFDASC_DISPLAY_MODEL_HPP_

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lfdasc {

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

// Geometry of the light field display. The depth-of-field slab is the signed
// depth range |z| <= dof_range_m / 2 around the screen plane (z = 0, negative
// in front of the screen, positive behind it).
//
// dof_range_m is an independent operational parameter, not derived from the
// feature-size model; dof_diagnostics() exposes both values side by side.
struct DisplayParams {
  double angular_resolution_deg = 0.95;  // angular sampling step of the display
  double pixel_size_m = 1.2e-3;          // screen-plane pixel pitch
  double viewer_distance_m = 3.0;
  double fov_deg = 70.0;
  int spatial_resolution_px = 1280;
  double dof_range_m = 0.2;  // full extent of the depth-of-field slab

  void validate() const {
    if (angular_resolution_deg <= 0.0 || pixel_size_m <= 0.0 ||
        viewer_distance_m <= 0.0 || fov_deg <= 0.0 ||
        spatial_resolution_px <= 0 || dof_range_m <= 0.0)
      throw std::invalid_argument("DisplayParams: all fields must be positive");
    if (angular_resolution_deg >= fov_deg)
      throw std::invalid_argument(
          "DisplayParams: angular resolution must be below the field of view");
  }
};

// Geometry of the captured view grid.
struct CaptureParams {
  double view_spacing_m = 3.77e-3;  // distance between adjacent camera positions
  double viewer_distance_m = 3.0;
  double baseline_m = 2.64;
  int view_resolution_px = 1280;
  int grid_rows = 1;  // t extent
  int grid_cols = 1;  // s extent

  void validate() const {
    if (view_spacing_m <= 0.0)
      throw std::invalid_argument("CaptureParams: view spacing must be positive");
    if (viewer_distance_m <= 0.0)
      throw std::invalid_argument(
          "CaptureParams: viewer distance must be positive");
    if (grid_rows < 1 || grid_cols < 1)
      throw std::invalid_argument("CaptureParams: grid must be at least 1x1");
    if (baseline_m < view_spacing_m)
      throw std::invalid_argument(
          "CaptureParams: baseline cannot be smaller than the view spacing");
  }
};

// Smallest feature size the display reproduces at signed depth z:
// pixel pitch plus the angular-sampling spread |z| * tan(alpha_s).
inline double feature_size(const DisplayParams& display, double z_m) {
  display.validate();
  return display.pixel_size_m +
         std::abs(z_m) * std::tan(deg_to_rad(display.angular_resolution_deg));
}

// Largest |z| at which the reproducible feature stays within twice the
// screen pixel: p0 / tan(alpha_s).
inline double dof_half_depth(const DisplayParams& display) {
  display.validate();
  return display.pixel_size_m /
         std::tan(deg_to_rad(display.angular_resolution_deg));
}

struct DofDiagnostics {
  double configured_range_m;  // operational slab size used by the metric
  double derived_range_m;     // 2 * dof_half_depth, from the feature-size model
};

inline DofDiagnostics dof_diagnostics(const DisplayParams& display) {
  return {display.dof_range_m, 2.0 * dof_half_depth(display)};
}

// Angular sampling step of the capture rig as seen from the viewer plane.
inline double capture_angular_resolution(const CaptureParams& capture) {
  if (capture.viewer_distance_m <= 0.0)
    throw std::invalid_argument(
        "capture_angular_resolution: viewer distance must be positive");
  return rad_to_deg(
      std::atan(capture.view_spacing_m / capture.viewer_distance_m));
}

// Filter radius (in views) that matches the capture sampling rate to the
// display's: half the whole ratio of the two angular steps, rounded half up
// so the 6.5-view case lands on 7.
inline int optimal_radius(double alpha_s_deg, double alpha_c_deg) {
  if (alpha_c_deg <= 0.0)
    throw std::invalid_argument(
        "optimal_radius: capture angular resolution must be positive");
  if (alpha_s_deg <= 0.0)
    throw std::invalid_argument(
        "optimal_radius: display angular resolution must be positive");
  const double half = 0.5 * std::floor(alpha_s_deg / alpha_c_deg);
  return static_cast<int>(std::floor(half + 0.5));
}

}  // namespace lfdasc

#endif  // LFDASC_DISPLAY_MODEL_HPP_
