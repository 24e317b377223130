// Copyright 2026 The IHVC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IHVC_IMAGE_H_
#define IHVC_IMAGE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ihvc {

// 8-bit RGB, row-major, interleaved.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;

  Image() = default;
  Image(int w, int h) : width(w), height(h), rgb(std::size_t(w) * h * 3, 0) {}

  std::uint8_t* at(int x, int y) {
    return rgb.data() + (static_cast<std::size_t>(y) * width + x) * 3;
  }
  const std::uint8_t* at(int x, int y) const {
    return rgb.data() + (static_cast<std::size_t>(y) * width + x) * 3;
  }

  friend bool operator==(const Image&, const Image&) = default;
};

// Throws Error(kIo) on malformed data.
Image DecodePng(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> EncodePng(const Image& image);

Image ReadPng(const std::string& path);
void WritePng(const std::string& path, const Image& image);

// Lowercase hex SHA-256 of the raw pixel bytes, prefixed by the dimensions
// so equal pixel buffers of different shapes differ.
std::string PixelHash(const Image& image);

}  // namespace ihvc

#endif  // IHVC_IMAGE_H_
