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

#include "ihvc/rd_eval.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>

#include "ihvc/error.h"
#include "ihvc/param_codec.h"
#include "ihvc/warp_gen.h"

namespace ihvc {
namespace {

auto ConfigKey(const QuantConfig& c) {
  return std::make_tuple(c.step_pose, c.step_trans, c.step_rot, c.step_loc);
}

std::string FormatReal(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

QuantConfig ClampToStepFloor(const QuantConfig& cfg) {
  auto clamp = [](double s) { return std::max(s, kStepFloor); };
  return {clamp(cfg.step_pose), clamp(cfg.step_trans), clamp(cfg.step_rot),
          clamp(cfg.step_loc)};
}

double PsnrFromMse(double mse) {
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double MeanSquaredError(std::span<const Image> a, std::span<const Image> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "frame counts differ");
  }
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].width != b[i].width || a[i].height != b[i].height) {
      throw Error(ErrorCode::kDimensionMismatch, "frame sizes differ");
    }
    for (std::size_t k = 0; k < a[i].rgb.size(); ++k) {
      const double d = static_cast<double>(a[i].rgb[k]) - b[i].rgb[k];
      sum += d * d;
    }
    count += a[i].rgb.size();
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

std::vector<RdPoint> EvaluateRd(const SemanticsDocument& doc,
                                std::span<const std::uint8_t> key_png,
                                std::span<const QuantConfig> configs) {
  if (configs.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "at least one config required");
  }
  std::vector<QuantConfig> sorted;
  for (const QuantConfig& cfg : configs) {
    sorted.push_back(ClampToStepFloor(cfg));
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const QuantConfig& x, const QuantConfig& y) {
              return ConfigKey(x) < ConfigKey(y);
            });

  std::vector<Image> reference;
  std::vector<RdPoint> rows;
  for (const QuantConfig& cfg : sorted) {
    const EncodeResult encoded =
        EncodeSequence(doc.key_full_params, key_png, doc.frames, cfg,
                       doc.width, doc.height, doc.fps);
    const CodedSequence parsed = Parse(Serialize(encoded.coded));
    const DecodedSemantics decoded = DecodeSequence(parsed);
    const FrameSynthesizer synth(decoded.key_params, DecodeKeyImage(decoded));
    if (reference.empty() && !doc.frames.empty()) {
      reference = RenderFrames(synth, doc.frames);
    }
    const std::vector<Image> rendered = RenderFrames(synth, decoded.frames);

    RdPoint row;
    row.config = cfg;
    row.bits_total = TotalBits(parsed, false);
    row.kbps_ex_key =
        parsed.header.frame_count > 0 ? MeasureRate(parsed, false) : 0.0;
    row.kbps_inc_key = MeasureRate(parsed, true);
    row.mse = MeanSquaredError(rendered, reference);
    row.psnr = PsnrFromMse(row.mse);
    rows.push_back(row);
  }
  return rows;
}

Json RdTableToJson(std::span<const RdPoint> rows) {
  Json out = Json::array();
  for (const RdPoint& r : rows) {
    Json psnr = std::isinf(r.psnr) ? Json("inf") : Json(r.psnr);
    out.push_back({{"step_pose", r.config.step_pose},
                   {"step_trans", r.config.step_trans},
                   {"step_rot", r.config.step_rot},
                   {"step_loc", r.config.step_loc},
                   {"bits_total", r.bits_total},
                   {"kbps_ex_key", r.kbps_ex_key},
                   {"kbps_inc_key", r.kbps_inc_key},
                   {"mse", r.mse},
                   {"psnr", std::move(psnr)}});
  }
  return out;
}

std::string RdTableToCsv(std::span<const RdPoint> rows) {
  std::ostringstream os;
  os << "step_pose,step_trans,step_rot,step_loc,bits_total,kbps_ex_key,"
        "kbps_inc_key,mse,psnr\n";
  for (const RdPoint& r : rows) {
    os << FormatReal(r.config.step_pose) << ','
       << FormatReal(r.config.step_trans) << ','
       << FormatReal(r.config.step_rot) << ','
       << FormatReal(r.config.step_loc) << ',' << r.bits_total << ','
       << FormatReal(r.kbps_ex_key) << ',' << FormatReal(r.kbps_inc_key)
       << ',' << FormatReal(r.mse) << ',' << FormatReal(r.psnr) << '\n';
  }
  return os.str();
}

}  // namespace ihvc
