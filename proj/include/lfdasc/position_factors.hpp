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

#ifndef LFDASC_POSITION_FACTORS_HPP_
#define LFDASC_POSITION_FACTORS_HPP_

#include <cmath>
#include <stdexcept>

#include "lfdasc/scene_maps.hpp"

namespace lfdasc {

// Object placement relative to the depth-of-field slab |z| <= d_phi / 2.
// Distances and spans are expressed in units of the slab size d_phi.
struct PositionFactors {
  double dof_overlap = 0.0;  // fraction of the object's pixels inside the slab
  double d_min = 0.0;        // boundary distance of the front extreme (z_min)
  double d_max = 0.0;        // boundary distance of the back extreme (z_max)
  double span_l = 0.0;       // depth extent in slab units
};

namespace detail {

inline void check_d_phi(double d_phi) {
  if (d_phi <= 0.0)
    throw std::invalid_argument("depth-of-field size must be positive");
}

}  // namespace detail

inline bool inside_dof(double z, double d_phi) {
  return std::abs(z) <= 0.5 * d_phi;
}

// Fraction of the region's pixels whose signed depth lies inside the slab.
inline double dof_overlap(const ObjectRegion& region, const DepthMap& depth,
                          double d_phi) {
  detail::check_d_phi(d_phi);
  if (region.pixels.empty())
    throw std::invalid_argument("dof_overlap: object region is empty");
  size_t inside = 0;
  for (const PixelCoord& p : region.pixels)
    if (inside_dof(depth.at(p.u, p.v), d_phi)) ++inside;
  return static_cast<double>(inside) / static_cast<double>(region.area());
}

// Distance from a depth extreme to the nearer slab boundary, in slab units.
// Zero exactly on either boundary.
inline double dof_distance(double extreme_z, double d_phi) {
  detail::check_d_phi(d_phi);
  const double half = 0.5 * d_phi;
  return std::min(std::abs(extreme_z - half), std::abs(extreme_z + half)) /
         d_phi;
}

// Depth extent of the object in slab units.
inline double object_span(const ObjectRegion& region, double d_phi) {
  detail::check_d_phi(d_phi);
  return std::abs(region.z_max - region.z_min) / d_phi;
}

inline PositionFactors position_factors(const ObjectRegion& region,
                                        const DepthMap& depth, double d_phi) {
  return {dof_overlap(region, depth, d_phi), dof_distance(region.z_min, d_phi),
          dof_distance(region.z_max, d_phi), object_span(region, d_phi)};
}

}  // namespace lfdasc

#endif  // LFDASC_POSITION_FACTORS_HPP_
