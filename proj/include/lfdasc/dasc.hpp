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

#ifndef LFDASC_DASC_HPP_
#define LFDASC_DASC_HPP_

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "lfdasc/display_model.hpp"
#include "lfdasc/geometric_factors.hpp"
#include "lfdasc/io/png_io.hpp"
#include "lfdasc/manifest.hpp"
#include "lfdasc/position_factors.hpp"
#include "lfdasc/scene_maps.hpp"

namespace lfdasc {

// Which depth extremes of an object fall outside the slab. "Front" is the
// minimum signed depth (toward the viewer), "back" the maximum.
enum class PsiCase { kInside, kFrontOut, kBackOut, kBothOut };

inline const char* to_string(PsiCase c) {
  switch (c) {
    case PsiCase::kInside:
      return "inside";
    case PsiCase::kFrontOut:
      return "front_out";
    case PsiCase::kBackOut:
      return "back_out";
    case PsiCase::kBothOut:
      return "both_out";
  }
  return "?";
}

struct PsiCaseResult {
  PsiCase tag = PsiCase::kInside;
  double psi = 0.0;
};

// Average of the three normalized geometric factors.
inline double nu(const NormalizedGeometricFactors& f) {
  return (f.curvature_norm + f.edge_norm + f.entropy_norm) / 3.0;
}

// Classifies the object by slab membership of its two depth extremes and
// returns the position weight:
//   inside    both extremes in the slab      psi = -l / (1 - omega)
//   back_out  only the back extreme outside  psi = d_max
//   front_out only the front extreme outside psi = d_min
//   both_out  both extremes outside          psi = d_min + d_max
// The out cases weight by the boundary distance of whichever extreme sticks
// out, so the weight grows with the span outside the slab. An object fully
// inside the slab necessarily has omega = 1; its psi is the -infinity limit,
// and aggregation uses the cancelled form -nu * l instead of evaluating it.
inline PsiCaseResult psi_case(double z_min, double z_max,
                              const PositionFactors& pos, double d_phi) {
  if (z_min > z_max)
    throw std::invalid_argument("psi_case: z_min must not exceed z_max");
  detail::check_d_phi(d_phi);

  const bool front_in = inside_dof(z_min, d_phi);
  const bool back_in = inside_dof(z_max, d_phi);
  if (front_in && back_in) {
    const double denom = 1.0 - pos.dof_overlap;
    const double psi = denom > 0.0
                           ? -pos.span_l / denom
                           : -std::numeric_limits<double>::infinity();
    return {PsiCase::kInside, psi};
  }
  if (!front_in && !back_in)
    return {PsiCase::kBothOut, pos.d_min + pos.d_max};
  if (!back_in) return {PsiCase::kBackOut, pos.d_max};
  return {PsiCase::kFrontOut, pos.d_min};
}

struct DascObjectInput {
  uint32_t label = 0;
  double nu = 0.0;
  PsiCaseResult psi;
  PositionFactors position;
};

struct DascObjectTerm {
  uint32_t label = 0;
  double nu = 0.0;
  PsiCase tag = PsiCase::kInside;
  double contribution = 0.0;
};

struct DascResult {
  double score_f = 0.0;
  size_t object_count = 0;
  std::vector<DascObjectTerm> per_object;  // label-sorted
};

// Mean of the per-object terms (1 - omega) * nu * psi. The inside case is
// evaluated as -nu * l, which is the same product with the (1 - omega)
// factor cancelled and stays finite at omega = 1. Sorting by label fixes the
// summation order, so results are bit-reproducible.
inline DascResult aggregate(std::vector<DascObjectInput> objects) {
  if (objects.empty())
    throw std::invalid_argument("aggregate: object list is empty");
  std::sort(objects.begin(), objects.end(),
            [](const DascObjectInput& a, const DascObjectInput& b) {
              return a.label < b.label;
            });

  DascResult result;
  result.object_count = objects.size();
  double sum = 0.0;
  for (const DascObjectInput& obj : objects) {
    double contribution;
    if (obj.psi.tag == PsiCase::kInside)
      contribution = -obj.nu * obj.position.span_l;
    else
      contribution = (1.0 - obj.position.dof_overlap) * obj.nu * obj.psi.psi;
    sum += contribution;
    result.per_object.push_back(
        {obj.label, obj.nu, obj.psi.tag, contribution});
  }
  result.score_f = sum / static_cast<double>(objects.size());
  return result;
}

// Full per-object audit record surfaced by the scene pipeline.
struct DascObjectReport {
  uint32_t label = 0;
  GeometricFactors geometric;
  NormalizedGeometricFactors normalized;
  PositionFactors position;
  double z_min = 0.0;
  double z_max = 0.0;
  double nu = 0.0;
  PsiCase tag = PsiCase::kInside;
  double contribution = 0.0;
};

struct DascSceneResult {
  std::string scene;
  double score_f = 0.0;
  size_t object_count = 0;
  double d_phi_m = 0.0;          // slab size the metric ran with
  double d_phi_derived_m = 0.0;  // feature-size model's value, for diagnostics
  double edge_threshold = 0.0;
  std::vector<DascObjectReport> objects;
};

// Scene pipeline: central view + depth + segmentation -> objects -> factors
// -> normalization -> score. Deterministic for fixed inputs.
inline DascSceneResult compute_dasc(const Manifest& m) {
  if (!m.depth || !m.segmentation)
    throw std::runtime_error(
        "manifest '" + m.scene +
        "' needs both a depth map and a segmentation map for scoring");

  const Image central = read_png_rgb(
      m.view_path(m.central_s(), m.central_t()).string());
  const DepthMap depth = load_depth_map(m);
  const SegmentationMap seg = load_segmentation_map(m);
  if (depth.width != central.width || depth.height != central.height)
    throw std::runtime_error("depth map is " + std::to_string(depth.width) +
                             "x" + std::to_string(depth.height) +
                             " but the central view is " +
                             std::to_string(central.width) + "x" +
                             std::to_string(central.height));

  const std::vector<ObjectRegion> regions = extract_objects(seg, depth);
  const double d_phi = m.display.dof_range_m;

  std::vector<GeometricFactors> raw;
  raw.reserve(regions.size());
  for (const ObjectRegion& r : regions)
    raw.push_back(geometric_factors(central, depth, r));
  const std::vector<NormalizedGeometricFactors> norm = normalize_factors(raw);

  std::vector<DascObjectInput> inputs;
  DascSceneResult scene;
  scene.scene = m.scene;
  scene.d_phi_m = d_phi;
  scene.d_phi_derived_m = dof_diagnostics(m.display).derived_range_m;
  scene.edge_threshold = edge_threshold();
  scene.objects.reserve(regions.size());

  for (size_t i = 0; i < regions.size(); ++i) {
    const ObjectRegion& r = regions[i];
    DascObjectReport report;
    report.label = r.label;
    report.geometric = raw[i];
    report.normalized = norm[i];
    report.position = position_factors(r, depth, d_phi);
    report.z_min = r.z_min;
    report.z_max = r.z_max;
    report.nu = nu(norm[i]);
    const PsiCaseResult psi = psi_case(r.z_min, r.z_max, report.position, d_phi);
    report.tag = psi.tag;
    inputs.push_back({r.label, report.nu, psi, report.position});
    scene.objects.push_back(report);
  }

  const DascResult agg = aggregate(inputs);
  scene.score_f = agg.score_f;
  scene.object_count = agg.object_count;
  for (const DascObjectTerm& term : agg.per_object) {
    auto it = std::find_if(scene.objects.begin(), scene.objects.end(),
                           [&](const DascObjectReport& o) {
                             return o.label == term.label;
                           });
    it->contribution = term.contribution;
  }
  std::sort(scene.objects.begin(), scene.objects.end(),
            [](const DascObjectReport& a, const DascObjectReport& b) {
              return a.label < b.label;
            });
  return scene;
}

inline DascSceneResult compute_dasc(const std::filesystem::path& manifest_path) {
  return compute_dasc(load_manifest(manifest_path));
}

}  // namespace lfdasc

#endif  // LFDASC_DASC_HPP_
