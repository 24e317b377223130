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

#ifndef IHVC_RD_EVAL_H_
#define IHVC_RD_EVAL_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ihvc/bitstream.h"
#include "ihvc/image.h"
#include "ihvc/json_io.h"

namespace ihvc {

// Steps below this are raised to it. A power of two, so it is exact in f32
// and lossless on values snapped to the same grid.
inline constexpr double kStepFloor = 1.0 / (1 << 20);

struct RdPoint {
  QuantConfig config;
  std::uint64_t bits_total = 0;  // inter segment only
  double kbps_ex_key = 0.0;
  double kbps_inc_key = 0.0;
  double mse = 0.0;
  double psnr = 0.0;  // +inf when mse == 0
};

QuantConfig ClampToStepFloor(const QuantConfig& cfg);

// 10 log10(255^2 / mse), +inf for mse == 0.
double PsnrFromMse(double mse);
double MeanSquaredError(std::span<const Image> a, std::span<const Image> b);

// Encodes, decodes and renders the document once per config. Distortion is
// measured against frames rendered from the unquantized semantics with
// the same key, so it reflects quantization alone. Rows are sorted by
// config.
std::vector<RdPoint> EvaluateRd(const SemanticsDocument& doc,
                                std::span<const std::uint8_t> key_png,
                                std::span<const QuantConfig> configs);

Json RdTableToJson(std::span<const RdPoint> rows);
// Columns: step_pose, step_trans, step_rot, step_loc, bits_total,
// kbps_ex_key, kbps_inc_key, mse, psnr.
std::string RdTableToCsv(std::span<const RdPoint> rows);

}  // namespace ihvc

#endif  // IHVC_RD_EVAL_H_
