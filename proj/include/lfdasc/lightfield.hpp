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

#ifndef LFDASC_LIGHTFIELD_HPP_
#define LFDASC_LIGHTFIELD_HPP_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lfdasc/core/image.hpp"
#include "lfdasc/display_model.hpp"
#include "lfdasc/io/png_io.hpp"
#include "lfdasc/manifest.hpp"

namespace lfdasc {

// Full-parallax view grid L(s, t, u, v): s indexes columns of the camera
// grid, t rows; (u, v) are pixel coordinates within a view. Immutable after
// load; concurrent readers need no synchronization.
struct LightField {
  CaptureParams capture;
  int view_width = 0;
  int view_height = 0;
  std::vector<Image> views;  // row-major: index t * grid_cols + s

  int grid_cols() const { return capture.grid_cols; }
  int grid_rows() const { return capture.grid_rows; }

  bool in_grid(int s, int t) const {
    return s >= 0 && s < grid_cols() && t >= 0 && t < grid_rows();
  }

  const Image& view(int s, int t) const {
    return views[static_cast<size_t>(t) * grid_cols() + s];
  }
  Image& view(int s, int t) {
    return views[static_cast<size_t>(t) * grid_cols() + s];
  }
};

inline const Image& get_view(const LightField& lf, int s, int t) {
  if (!lf.in_grid(s, t))
    throw std::out_of_range("get_view: view (s=" + std::to_string(s) +
                            ", t=" + std::to_string(t) + ") outside the " +
                            std::to_string(lf.grid_cols()) + "x" +
                            std::to_string(lf.grid_rows()) + " grid");
  return lf.view(s, t);
}

// Loads every view named by the manifest. Views must all decode to the same
// pixel dimensions; failures name the offending file and grid cell.
inline LightField load_light_field(const Manifest& m) {
  LightField lf;
  lf.views.reserve(static_cast<size_t>(m.grid_rows) * m.grid_cols);

  for (int t = 0; t < m.grid_rows; ++t) {
    for (int s = 0; s < m.grid_cols; ++s) {
      const std::filesystem::path path = m.view_path(s, t);
      if (!std::filesystem::exists(path))
        throw std::runtime_error("light field view (s=" + std::to_string(s) +
                                 ", t=" + std::to_string(t) +
                                 ") missing: " + path.string());
      Image img = read_png_rgb(path.string());
      if (lf.views.empty()) {
        lf.view_width = img.width;
        lf.view_height = img.height;
      } else if (img.width != lf.view_width || img.height != lf.view_height) {
        throw std::runtime_error(
            "light field view (s=" + std::to_string(s) +
            ", t=" + std::to_string(t) + ") is " + std::to_string(img.width) +
            "x" + std::to_string(img.height) + ", expected " +
            std::to_string(lf.view_width) + "x" +
            std::to_string(lf.view_height) + ": " + path.string());
      }
      lf.views.push_back(std::move(img));
    }
  }

  lf.capture = m.capture(lf.view_width);
  lf.capture.validate();
  return lf;
}

inline LightField load_light_field(const std::filesystem::path& manifest_path) {
  return load_light_field(load_manifest(manifest_path));
}

// Writes the grid back out under the manifest naming pattern. Directories
// are created as needed.
inline void write_views(const LightField& lf,
                        const std::filesystem::path& directory,
                        const std::string& view_pattern, int bit_depth = 8) {
  detail::validate_view_pattern(view_pattern);
  Manifest pattern_holder;
  pattern_holder.view_pattern = view_pattern;
  for (int t = 0; t < lf.grid_rows(); ++t) {
    for (int s = 0; s < lf.grid_cols(); ++s) {
      const std::filesystem::path path =
          directory / pattern_holder.view_filename(s, t);
      if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
      write_png_rgb(path.string(), lf.view(s, t), bit_depth);
    }
  }
}

}  // namespace lfdasc

#endif  // LFDASC_LIGHTFIELD_HPP_
