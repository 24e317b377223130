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

#include "ihvc/image.h"

#include <png.h>

#include <openssl/evp.h>

#include <cstdio>
#include <memory>

#include "ihvc/bitstream.h"
#include "ihvc/error.h"

namespace ihvc {
namespace {

struct PngImage {
  png_image image{};
  PngImage() { image.version = PNG_IMAGE_VERSION; }
  ~PngImage() { png_image_free(&image); }
};

}  // namespace

Image DecodePng(std::span<const std::uint8_t> bytes) {
  PngImage png;
  if (!png_image_begin_read_from_memory(&png.image, bytes.data(),
                                        bytes.size())) {
    throw Error(ErrorCode::kIo,
                std::string("png decode failed: ") + png.image.message);
  }
  png.image.format = PNG_FORMAT_RGB;
  Image out(static_cast<int>(png.image.width),
            static_cast<int>(png.image.height));
  if (!png_image_finish_read(&png.image, nullptr, out.rgb.data(), 0,
                             nullptr)) {
    throw Error(ErrorCode::kIo,
                std::string("png decode failed: ") + png.image.message);
  }
  return out;
}

std::vector<std::uint8_t> EncodePng(const Image& image) {
  PngImage png;
  png.image.width = static_cast<png_uint_32>(image.width);
  png.image.height = static_cast<png_uint_32>(image.height);
  png.image.format = PNG_FORMAT_RGB;
  png_alloc_size_t size = 0;
  if (!png_image_write_get_memory_size(png.image, size, 0, image.rgb.data(),
                                       0, nullptr)) {
    throw Error(ErrorCode::kIo,
                std::string("png encode failed: ") + png.image.message);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&png.image, out.data(), &size, 0,
                                 image.rgb.data(), 0, nullptr)) {
    throw Error(ErrorCode::kIo,
                std::string("png encode failed: ") + png.image.message);
  }
  out.resize(size);
  return out;
}

Image ReadPng(const std::string& path) { return DecodePng(ReadFileBytes(path)); }

void WritePng(const std::string& path, const Image& image) {
  WriteFileBytes(path, EncodePng(image));
}

std::string PixelHash(const Image& image) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(
      EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  const std::string dims =
      std::to_string(image.width) + "x" + std::to_string(image.height) + ":";
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || !EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) ||
      !EVP_DigestUpdate(ctx.get(), dims.data(), dims.size()) ||
      !EVP_DigestUpdate(ctx.get(), image.rgb.data(), image.rgb.size()) ||
      !EVP_DigestFinal_ex(ctx.get(), digest, &len)) {
    throw Error(ErrorCode::kIo, "sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 15]);
  }
  return hex;
}

}  // namespace ihvc
