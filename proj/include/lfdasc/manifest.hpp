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

#ifndef LFDASC_MANIFEST_HPP_
#define LFDASC_MANIFEST_HPP_

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lfdasc/display_model.hpp"

namespace lfdasc {

// How the stored depth samples map to signed screen-relative meters.
struct DepthSpec {
  enum class Encoding { kPfm, kPng16 };
  enum class Convention { kScreenRelative, kCameraDistance };

  std::string path;
  Encoding encoding = Encoding::kPfm;
  double scale = 1.0;   // meters per unit sample (png16 only)
  double offset = 0.0;  // meters added after scaling (png16 only)
  Convention convention = Convention::kScreenRelative;
  double screen_distance_m = 0.0;  // camera-to-screen distance (camera_distance)
};

struct SegmentationSpec {
  std::string path;
  std::optional<uint32_t> background;  // packed 0xRRGGBB
  std::vector<uint32_t> exclude;
};

// Scene description: where the view grid lives on disk, the capture geometry,
// optional depth/segmentation maps, and display-parameter overrides.
struct Manifest {
  std::string scene;
  int grid_rows = 0;
  int grid_cols = 0;
  std::string view_pattern;  // two printf integer fields, filled with (t, s)
  double view_spacing_m = 0.0;
  double viewer_distance_m = 0.0;
  double baseline_m = 0.0;
  int view_bit_depth = 8;
  std::optional<DepthSpec> depth;
  std::optional<SegmentationSpec> segmentation;
  DisplayParams display;
  std::filesystem::path base_dir;

  std::string view_filename(int s, int t) const;
  std::filesystem::path view_path(int s, int t) const {
    return base_dir / view_filename(s, t);
  }
  std::filesystem::path resolve(const std::string& rel) const {
    return base_dir / rel;
  }

  // Grid center, the view all single-image analyses run on.
  int central_s() const { return grid_cols / 2; }
  int central_t() const { return grid_rows / 2; }

  CaptureParams capture(int view_resolution_px) const {
    CaptureParams c;
    c.view_spacing_m = view_spacing_m;
    c.viewer_distance_m = viewer_distance_m;
    c.baseline_m = baseline_m;
    c.view_resolution_px = view_resolution_px;
    c.grid_rows = grid_rows;
    c.grid_cols = grid_cols;
    return c;
  }
};

namespace detail {

// The pattern must contain exactly two plain (optionally zero-padded) decimal
// fields; anything fancier is rejected rather than guessed at.
inline void validate_view_pattern(const std::string& pattern) {
  int fields = 0;
  for (size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] != '%') continue;
    size_t j = i + 1;
    if (j < pattern.size() && pattern[j] == '%') {
      i = j;
      continue;
    }
    if (j < pattern.size() && pattern[j] == '0') ++j;
    while (j < pattern.size() && pattern[j] >= '0' && pattern[j] <= '9') ++j;
    if (j >= pattern.size() || pattern[j] != 'd')
      throw std::invalid_argument(
          "manifest field 'view_pattern': only %d-style integer fields are "
          "allowed, got '" +
          pattern + "'");
    ++fields;
    i = j;
  }
  if (fields != 2)
    throw std::invalid_argument(
        "manifest field 'view_pattern': expected exactly two integer fields "
        "for (row t, column s), got '" +
        pattern + "'");
}

inline uint32_t parse_color(const std::string& text, const char* field) {
  if (text.size() != 7 || text[0] != '#')
    throw std::invalid_argument(std::string("manifest field '") + field +
                                "': colors use '#rrggbb', got '" + text + "'");
  uint32_t value = 0;
  for (size_t i = 1; i < 7; ++i) {
    char c = text[i];
    int digit;
    if (c >= '0' && c <= '9')
      digit = c - '0';
    else if (c >= 'a' && c <= 'f')
      digit = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F')
      digit = c - 'A' + 10;
    else
      throw std::invalid_argument(std::string("manifest field '") + field +
                                  "': colors use '#rrggbb', got '" + text +
                                  "'");
    value = (value << 4) | static_cast<uint32_t>(digit);
  }
  return value;
}

inline std::string format_color(uint32_t packed) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%06x", packed & 0xffffffu);
  return buf;
}

template <typename T>
T require_field(const nlohmann::json& j, const char* name) {
  if (!j.contains(name))
    throw std::invalid_argument(std::string("manifest: missing field '") +
                                name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw std::invalid_argument(std::string("manifest field '") + name +
                                "': wrong type");
  }
}

}  // namespace detail

inline std::string Manifest::view_filename(int s, int t) const {
  char buf[1024];
  int n = std::snprintf(buf, sizeof(buf), view_pattern.c_str(), t, s);
  if (n < 0 || n >= static_cast<int>(sizeof(buf)))
    throw std::runtime_error("view pattern expansion failed for '" +
                             view_pattern + "'");
  return buf;
}

inline Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open manifest '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed manifest '" + path.string() +
                             "': " + e.what());
  }

  Manifest m;
  m.base_dir = path.has_parent_path() ? path.parent_path()
                                      : std::filesystem::path(".");
  m.scene = j.value("scene", path.stem().string());
  m.grid_rows = detail::require_field<int>(j, "grid_rows");
  m.grid_cols = detail::require_field<int>(j, "grid_cols");
  m.view_pattern = detail::require_field<std::string>(j, "view_pattern");
  m.view_spacing_m = detail::require_field<double>(j, "view_spacing_m");
  m.viewer_distance_m = detail::require_field<double>(j, "viewer_distance_m");
  m.baseline_m = detail::require_field<double>(j, "baseline_m");
  m.view_bit_depth = j.value("view_bit_depth", 8);

  if (m.grid_rows < 1 || m.grid_cols < 1)
    throw std::invalid_argument("manifest: grid must be at least 1x1");
  if (m.view_bit_depth != 8 && m.view_bit_depth != 16)
    throw std::invalid_argument(
        "manifest field 'view_bit_depth': must be 8 or 16");
  detail::validate_view_pattern(m.view_pattern);

  // Every grid cell must name its own file.
  std::set<std::string> names;
  for (int t = 0; t < m.grid_rows; ++t)
    for (int s = 0; s < m.grid_cols; ++s)
      if (!names.insert(m.view_filename(s, t)).second)
        throw std::invalid_argument(
            "manifest field 'view_pattern': pattern does not expand to " +
            std::to_string(m.grid_rows * m.grid_cols) + " distinct paths");

  if (j.contains("depth")) {
    const auto& d = j.at("depth");
    DepthSpec spec;
    spec.path = detail::require_field<std::string>(d, "path");
    const std::string enc = d.value("encoding", std::string("pfm"));
    if (enc == "pfm") {
      spec.encoding = DepthSpec::Encoding::kPfm;
    } else if (enc == "png16") {
      spec.encoding = DepthSpec::Encoding::kPng16;
      spec.scale = detail::require_field<double>(d, "scale");
      spec.offset = d.value("offset", 0.0);
    } else {
      throw std::invalid_argument(
          "manifest field 'depth.encoding': must be 'pfm' or 'png16', got '" +
          enc + "'");
    }
    const std::string conv =
        d.value("convention", std::string("screen_relative"));
    if (conv == "screen_relative") {
      spec.convention = DepthSpec::Convention::kScreenRelative;
    } else if (conv == "camera_distance") {
      spec.convention = DepthSpec::Convention::kCameraDistance;
      spec.screen_distance_m =
          detail::require_field<double>(d, "screen_distance_m");
    } else {
      throw std::invalid_argument(
          "manifest field 'depth.convention': must be 'screen_relative' or "
          "'camera_distance', got '" +
          conv + "'");
    }
    m.depth = spec;
  }

  if (j.contains("segmentation")) {
    const auto& s = j.at("segmentation");
    SegmentationSpec spec;
    spec.path = detail::require_field<std::string>(s, "path");
    if (s.contains("background"))
      spec.background = detail::parse_color(
          s.at("background").get<std::string>(), "segmentation.background");
    if (s.contains("exclude"))
      for (const auto& c : s.at("exclude"))
        spec.exclude.push_back(detail::parse_color(
            c.get<std::string>(), "segmentation.exclude"));
    m.segmentation = spec;
  }

  if (j.contains("display")) {
    const auto& d = j.at("display");
    m.display.angular_resolution_deg =
        d.value("angular_resolution_deg", m.display.angular_resolution_deg);
    m.display.pixel_size_m = d.value("pixel_size_m", m.display.pixel_size_m);
    m.display.viewer_distance_m =
        d.value("viewer_distance_m", m.display.viewer_distance_m);
    m.display.fov_deg = d.value("fov_deg", m.display.fov_deg);
    m.display.spatial_resolution_px =
        d.value("spatial_resolution_px", m.display.spatial_resolution_px);
    m.display.dof_range_m = d.value("dof_range_m", m.display.dof_range_m);
  }
  m.display.validate();

  return m;
}

}  // namespace lfdasc

#endif  // LFDASC_MANIFEST_HPP_
