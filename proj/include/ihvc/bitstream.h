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

#ifndef IHVC_BITSTREAM_H_
#define IHVC_BITSTREAM_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ihvc/semantics.h"

namespace ihvc {

inline constexpr char kMagic[4] = {'I', 'H', 'V', 'C'};
inline constexpr std::uint8_t kVersion = 1;
// Fixed part of the container before the key payload.
inline constexpr std::size_t kFixedHeaderBytes = 37;
inline constexpr std::size_t kKeyParamsBytes = kFullParamDims * 4;  // 332

// Uniform quantizer step per component group.
struct QuantConfig {
  double step_pose = 0.005;
  double step_trans = 0.002;
  double step_rot = 0.005;
  double step_loc = 1.0 / 512.0;

  double StepFor(std::size_t flat_index) const;
  // Steps rounded to the f32 values the container carries.
  QuantConfig Representable() const;
  QuantConfig Scaled(double factor) const;

  friend bool operator==(const QuantConfig&, const QuantConfig&) = default;
};

// Throws Error(kValidation) unless every step is finite and > 0 in f32.
void Validate(const QuantConfig& cfg);

struct SequenceHeader {
  std::uint16_t width = 0;
  std::uint16_t height = 0;
  std::uint16_t fps_num = 30;
  std::uint16_t fps_den = 1;
  std::uint32_t frame_count = 0;
  QuantConfig steps;

  double fps() const { return static_cast<double>(fps_num) / fps_den; }

  friend bool operator==(const SequenceHeader&,
                         const SequenceHeader&) = default;
};

struct CodedSequence {
  SequenceHeader header;
  std::vector<std::uint8_t> key_payload;
  std::array<float, kFullParamDims> key_params{};
  std::vector<std::uint8_t> inter_segment;
  // Encoder instrumentation; not serialized.
  std::vector<std::uint32_t> per_frame_bits;
};

// Best rational approximation with numerator and denominator in
// [1, 65535]. Throws Error(kValidation) for fps outside that range.
std::pair<std::uint16_t, std::uint16_t> FpsToRational(double fps);

std::vector<std::uint8_t> Serialize(const CodedSequence& cs);
// Throws Error with kBadMagic, kBadVersion, kTruncated or kTrailingBytes.
CodedSequence Parse(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> ReadFileBytes(const std::string& path);
void WriteFileBytes(const std::string& path,
                    std::span<const std::uint8_t> bytes);

}  // namespace ihvc

#endif  // IHVC_BITSTREAM_H_
