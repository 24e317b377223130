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

#include "ihvc/param_codec.h"

#include <bit>
#include <cmath>
#include <string>

#include "ihvc/error.h"

namespace ihvc {

SemanticVector Predict(const SemanticVector& prev_recon) { return prev_recon; }

std::int64_t QuantizeResidual(double residual, double step) {
  if (!std::isfinite(residual)) {
    throw Error(ErrorCode::kValidation, "residual is not finite");
  }
  if (!(step > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "quantizer step must be > 0");
  }
  const double scaled = residual / step;
  if (!(std::abs(scaled) <= static_cast<double>(kMaxIndexMagnitude))) {
    throw Error(ErrorCode::kValidation, "residual too large for step");
  }
  return std::llround(scaled);
}

double Dequantize(std::int64_t index, double step) {
  return static_cast<double>(index) * step;
}

std::uint64_t Zigzag(std::int64_t index) {
  return index >= 0 ? static_cast<std::uint64_t>(index) << 1
                    : (static_cast<std::uint64_t>(-(index + 1)) << 1) | 1u;
}

std::int64_t Unzigzag(std::uint64_t code) {
  const auto half = static_cast<std::int64_t>(code >> 1);
  return (code & 1u) ? -half - 1 : half;
}

void EncodeIndex(BinaryEncoder& enc, IndexContexts& ctx, std::size_t component,
                 std::int64_t index) {
  const std::uint64_t value = Zigzag(index) + 1;
  const int n = std::bit_width(value) - 1;
  for (int k = 0; k <= n; ++k) {
    const int bit = k < n ? 1 : 0;
    if (k < kContextBins) {
      enc.Encode(bit, ctx.at(component, k));
    } else {
      enc.EncodeBypass(bit);
    }
  }
  for (int k = n - 1; k >= 0; --k) {
    enc.EncodeBypass(static_cast<int>((value >> k) & 1u));
  }
}

std::int64_t DecodeIndex(BinaryDecoder& dec, IndexContexts& ctx,
                         std::size_t component) {
  constexpr int kMaxPrefix = 41;
  int n = 0;
  while (true) {
    const int bit =
        n < kContextBins ? dec.Decode(ctx.at(component, n)) : dec.DecodeBypass();
    if (!bit) break;
    if (++n > kMaxPrefix) {
      throw Error(ErrorCode::kCorrupt, "exp-golomb prefix too long");
    }
  }
  std::uint64_t value = 1;
  for (int k = 0; k < n; ++k) {
    value = (value << 1) | static_cast<std::uint64_t>(dec.DecodeBypass());
  }
  return Unzigzag(value - 1);
}

FullBodyParams KeyParamsFromStream(
    const std::array<float, kFullParamDims>& stored) {
  std::array<double, kFullParamDims> flat{};
  for (std::size_t i = 0; i < flat.size(); ++i) flat[i] = stored[i];
  return FullBodyParams::FromFlat(flat);
}

EncodeResult EncodeSequence(const FullBodyParams& key_params,
                            std::span<const std::uint8_t> key_payload,
                            std::span<const SemanticVector> frames,
                            const QuantConfig& cfg, int width, int height,
                            double fps) {
  Validate(cfg);
  Validate(key_params);
  if (width < 1 || width > 65535 || height < 1 || height > 65535) {
    throw Error(ErrorCode::kValidation, "width/height out of range");
  }
  for (std::size_t l = 0; l < frames.size(); ++l) {
    if (auto problem = CheckSemantics(frames[l])) {
      throw Error(ErrorCode::kValidation,
                  "frame " + std::to_string(l) + ": " + *problem);
    }
  }
  if (frames.size() > 0xFFFFFFFFu || key_payload.size() > 0xFFFFFFFFu) {
    throw Error(ErrorCode::kValidation, "sequence too large");
  }

  EncodeResult result;
  CodedSequence& cs = result.coded;
  const auto [fps_num, fps_den] = FpsToRational(fps);
  cs.header.width = static_cast<std::uint16_t>(width);
  cs.header.height = static_cast<std::uint16_t>(height);
  cs.header.fps_num = fps_num;
  cs.header.fps_den = fps_den;
  cs.header.frame_count = static_cast<std::uint32_t>(frames.size());
  cs.header.steps = cfg.Representable();
  cs.key_payload.assign(key_payload.begin(), key_payload.end());
  const auto key_flat = key_params.Flatten();
  for (std::size_t i = 0; i < key_flat.size(); ++i) {
    cs.key_params[i] = static_cast<float>(key_flat[i]);
  }

  const QuantConfig& steps = cs.header.steps;
  auto recon = SplitFullParams(KeyParamsFromStream(cs.key_params)).first;
  BinaryEncoder enc;
  IndexContexts ctx;
  result.recon.reserve(frames.size());
  cs.per_frame_bits.reserve(frames.size());
  std::int64_t committed_bits = 0;
  for (std::size_t l = 0; l < frames.size(); ++l) {
    const auto original = frames[l].Flatten();
    auto predicted = Predict(recon).Flatten();
    for (std::size_t c = 0; c < kSemanticDims; ++c) {
      const double step = steps.StepFor(c);
      const std::int64_t index = QuantizeResidual(original[c] - predicted[c], step);
      predicted[c] += Dequantize(index, step);
      EncodeIndex(enc, ctx, c, index);
    }
    recon = SemanticVector::FromFlat(predicted);
    result.recon.push_back(recon);
    if (l + 1 == frames.size()) enc.Flush();
    const auto position = static_cast<std::int64_t>(std::llround(enc.BitPosition()));
    cs.per_frame_bits.push_back(
        static_cast<std::uint32_t>(position - committed_bits));
    committed_bits = position;
  }
  cs.inter_segment = enc.TakeBytes();
  return result;
}

DecodedSemantics DecodeSequence(const CodedSequence& cs) {
  Validate(cs.header.steps);
  DecodedSemantics out;
  out.header = cs.header;
  out.key_payload = cs.key_payload;
  out.key_params = KeyParamsFromStream(cs.key_params);
  const std::uint32_t frame_count = cs.header.frame_count;
  if (frame_count == 0) {
    if (!cs.inter_segment.empty()) {
      throw Error(ErrorCode::kCorrupt, "segment present with zero frames");
    }
    return out;
  }
  auto recon = SplitFullParams(out.key_params).first;
  BinaryDecoder dec(cs.inter_segment);
  IndexContexts ctx;
  const QuantConfig& steps = cs.header.steps;
  for (std::uint32_t l = 0; l < frame_count; ++l) {
    auto predicted = Predict(recon).Flatten();
    for (std::size_t c = 0; c < kSemanticDims; ++c) {
      const double step = steps.StepFor(c);
      predicted[c] += Dequantize(DecodeIndex(dec, ctx, c), step);
    }
    recon = SemanticVector::FromFlat(predicted);
    out.frames.push_back(recon);
  }
  if (dec.consumed() != dec.size()) {
    throw Error(ErrorCode::kCorrupt,
                std::to_string(dec.size() - dec.consumed()) +
                    " unused bytes in segment");
  }
  return out;
}

std::uint64_t TotalBits(const CodedSequence& cs, bool include_key) {
  std::uint64_t bytes = cs.inter_segment.size();
  if (include_key) bytes += cs.key_payload.size() + kKeyParamsBytes;
  return bytes * 8;
}

double MeasureRate(const CodedSequence& cs, bool include_key) {
  if (cs.header.frame_count == 0 && !include_key) {
    throw Error(ErrorCode::kInvalidArgument,
                "rate undefined without inter frames");
  }
  const double frames = static_cast<double>(cs.header.frame_count) + 1.0;
  return static_cast<double>(TotalBits(cs, include_key)) * cs.header.fps() /
         frames / 1000.0;
}

}  // namespace ihvc
