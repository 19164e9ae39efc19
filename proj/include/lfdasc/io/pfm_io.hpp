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

#ifndef LFDASC_IO_PFM_IO_HPP_
#define LFDASC_IO_PFM_IO_HPP_

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lfdasc/core/image.hpp"

namespace lfdasc {

namespace detail {

inline void byteswap_floats(std::vector<float>& v) {
  for (float& f : v) {
    uint32_t bits;
    std::memcpy(&bits, &f, 4);
    bits = ((bits & 0xff000000u) >> 24) | ((bits & 0x00ff0000u) >> 8) |
           ((bits & 0x0000ff00u) << 8) | ((bits & 0x000000ffu) << 24);
    std::memcpy(&f, &bits, 4);
  }
}

}  // namespace detail

// Grayscale PFM ("Pf"): text header, then raw float32 scanlines stored
// bottom-to-top. The scale's sign encodes endianness (negative = little).
inline FloatMap read_pfm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open PFM '" + path + "'");

  std::string magic;
  int width = 0, height = 0;
  double scale = 0.0;
  in >> magic >> width >> height >> scale;
  if (!in || (magic != "Pf" && magic != "PF"))
    throw std::runtime_error("malformed PFM header in '" + path + "'");
  if (magic == "PF")
    throw std::runtime_error("PFM '" + path +
                             "': color maps unsupported, expected grayscale Pf");
  if (width <= 0 || height <= 0 || scale == 0.0)
    throw std::runtime_error("malformed PFM header in '" + path + "'");
  in.get();  // single whitespace separating header and data

  std::vector<float> raw(static_cast<size_t>(width) * height);
  in.read(reinterpret_cast<char*>(raw.data()),
          static_cast<std::streamsize>(raw.size() * sizeof(float)));
  if (!in)
    throw std::runtime_error("truncated PFM data in '" + path + "'");

  const bool file_little = scale < 0.0;
  if (file_little != (std::endian::native == std::endian::little))
    detail::byteswap_floats(raw);

  FloatMap out(width, height);
  for (int v = 0; v < height; ++v) {
    const float* src = raw.data() + static_cast<size_t>(height - 1 - v) * width;
    std::memcpy(&out.values[static_cast<size_t>(v) * width], src,
                static_cast<size_t>(width) * sizeof(float));
  }
  return out;
}

inline void write_pfm(const std::string& path, const FloatMap& map) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot create PFM '" + path + "'");
  const double scale = std::endian::native == std::endian::little ? -1.0 : 1.0;
  out << "Pf\n" << map.width << " " << map.height << "\n" << scale << "\n";
  std::vector<float> row(static_cast<size_t>(map.width));
  for (int v = map.height - 1; v >= 0; --v) {
    std::memcpy(row.data(), &map.values[static_cast<size_t>(v) * map.width],
                row.size() * sizeof(float));
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(float)));
  }
  if (!out) throw std::runtime_error("failed writing PFM '" + path + "'");
}

}  // namespace lfdasc

#endif  // LFDASC_IO_PFM_IO_HPP_
