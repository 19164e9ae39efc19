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

#ifndef LFDASC_IO_PNG_IO_HPP_
#define LFDASC_IO_PNG_IO_HPP_

#include <png.h>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <string>
#include <vector>

#include "lfdasc/core/image.hpp"

namespace lfdasc {

struct Gray16 {
  int width = 0;
  int height = 0;
  std::vector<uint16_t> values;
};

struct LabelMapData {
  int width = 0;
  int height = 0;
  std::vector<uint32_t> labels;  // packed 0xRRGGBB
};

namespace detail {

inline void throw_png_error(const png_image& image, const std::string& path,
                            const char* what) {
  throw std::runtime_error(std::string(what) + " '" + path +
                           "': " + image.message);
}

inline png_image begin_png_read(const std::string& path) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str()))
    throw_png_error(image, path, "cannot read PNG");
  return image;
}

}  // namespace detail

// Decodes any 8- or 16-bit PNG (gray/palette/RGB/RGBA) to linear-indexed RGB
// floats in [0, 1]. 8-bit samples divide by 255, 16-bit by 65535.
inline Image read_png_rgb(const std::string& path) {
  png_image image = detail::begin_png_read(path);
  const bool sixteen = (image.format & PNG_FORMAT_FLAG_LINEAR) != 0;
  image.format = sixteen ? PNG_FORMAT_LINEAR_RGB : PNG_FORMAT_RGB;

  Image out;
  out.width = static_cast<int>(image.width);
  out.height = static_cast<int>(image.height);
  const size_t npx = static_cast<size_t>(out.width) * out.height;
  out.rgb.resize(npx * 3);

  if (sixteen) {
    std::vector<uint16_t> buf(npx * 3);
    if (!png_image_finish_read(&image, nullptr, buf.data(), 0, nullptr))
      detail::throw_png_error(image, path, "cannot decode PNG");
    for (size_t i = 0; i < buf.size(); ++i)
      out.rgb[i] = static_cast<float>(buf[i] / 65535.0);
  } else {
    std::vector<uint8_t> buf(npx * 3);
    if (!png_image_finish_read(&image, nullptr, buf.data(), 0, nullptr))
      detail::throw_png_error(image, path, "cannot decode PNG");
    for (size_t i = 0; i < buf.size(); ++i)
      out.rgb[i] = static_cast<float>(buf[i] / 255.0);
  }
  return out;
}

// Raw 16-bit grayscale samples, e.g. a quantized depth channel. Rejects
// color or 8-bit files so stored values pass through untouched.
inline Gray16 read_png_gray16(const std::string& path) {
  png_image image = detail::begin_png_read(path);
  if (image.format & PNG_FORMAT_FLAG_COLOR) {
    png_image_free(&image);
    throw std::runtime_error("PNG '" + path +
                             "': expected grayscale, found color channels");
  }
  if (!(image.format & PNG_FORMAT_FLAG_LINEAR)) {
    png_image_free(&image);
    throw std::runtime_error("PNG '" + path +
                             "': expected 16-bit samples, found 8-bit");
  }
  image.format = PNG_FORMAT_LINEAR_Y;

  Gray16 out;
  out.width = static_cast<int>(image.width);
  out.height = static_cast<int>(image.height);
  out.values.resize(static_cast<size_t>(out.width) * out.height);
  if (!png_image_finish_read(&image, nullptr, out.values.data(), 0, nullptr))
    detail::throw_png_error(image, path, "cannot decode PNG");
  return out;
}

// 8-bit label image (palette entries expanded to RGB); each pixel becomes a
// packed 0xRRGGBB label.
inline LabelMapData read_png_labels(const std::string& path) {
  png_image image = detail::begin_png_read(path);
  if (image.format & PNG_FORMAT_FLAG_LINEAR) {
    png_image_free(&image);
    throw std::runtime_error("PNG '" + path +
                             "': 16-bit segmentation maps are not supported");
  }
  image.format = PNG_FORMAT_RGB;

  LabelMapData out;
  out.width = static_cast<int>(image.width);
  out.height = static_cast<int>(image.height);
  const size_t npx = static_cast<size_t>(out.width) * out.height;
  std::vector<uint8_t> buf(npx * 3);
  if (!png_image_finish_read(&image, nullptr, buf.data(), 0, nullptr))
    detail::throw_png_error(image, path, "cannot decode PNG");
  out.labels.resize(npx);
  for (size_t i = 0; i < npx; ++i) {
    out.labels[i] = (static_cast<uint32_t>(buf[i * 3]) << 16) |
                    (static_cast<uint32_t>(buf[i * 3 + 1]) << 8) |
                    static_cast<uint32_t>(buf[i * 3 + 2]);
  }
  return out;
}

// Quantizes [0,1] floats to 8- or 16-bit RGB and writes the file. Values are
// clamped; rounding is to nearest, so an exact k/255 grid survives an 8-bit
// round trip.
inline void write_png_rgb(const std::string& path, const Image& img,
                          int bit_depth = 8) {
  if (bit_depth != 8 && bit_depth != 16)
    throw std::invalid_argument("write_png_rgb: bit depth must be 8 or 16");
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width);
  image.height = static_cast<png_uint_32>(img.height);

  const size_t n = img.rgb.size();
  auto quantize = [](float v, double scale) {
    double c = std::clamp(static_cast<double>(v), 0.0, 1.0);
    return std::lround(c * scale);
  };

  int ok = 0;
  if (bit_depth == 16) {
    image.format = PNG_FORMAT_LINEAR_RGB;
    std::vector<uint16_t> buf(n);
    for (size_t i = 0; i < n; ++i)
      buf[i] = static_cast<uint16_t>(quantize(img.rgb[i], 65535.0));
    ok = png_image_write_to_file(&image, path.c_str(), 0, buf.data(), 0,
                                 nullptr);
  } else {
    image.format = PNG_FORMAT_RGB;
    std::vector<uint8_t> buf(n);
    for (size_t i = 0; i < n; ++i)
      buf[i] = static_cast<uint8_t>(quantize(img.rgb[i], 255.0));
    ok = png_image_write_to_file(&image, path.c_str(), 0, buf.data(), 0,
                                 nullptr);
  }
  if (!ok) detail::throw_png_error(image, path, "cannot write PNG");
}

inline void write_png_gray16(const std::string& path, const Gray16& gray) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(gray.width);
  image.height = static_cast<png_uint_32>(gray.height);
  image.format = PNG_FORMAT_LINEAR_Y;
  if (!png_image_write_to_file(&image, path.c_str(), 0, gray.values.data(), 0,
                               nullptr))
    detail::throw_png_error(image, path, "cannot write PNG");
}

}  // namespace lfdasc

#endif  // LFDASC_IO_PNG_IO_HPP_
