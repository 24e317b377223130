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

#ifndef IHVC_PARAM_CODEC_H_
#define IHVC_PARAM_CODEC_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "ihvc/arith_coder.h"
#include "ihvc/bitstream.h"
#include "ihvc/semantics.h"

namespace ihvc {

// Prefix bins at positions below this use adaptive contexts.
inline constexpr int kContextBins = 16;
// Largest |index| the quantizer will produce.
inline constexpr std::int64_t kMaxIndexMagnitude = std::int64_t{1} << 40;

// Order-1 hold: the predictor is the previous reconstruction.
SemanticVector Predict(const SemanticVector& prev_recon);

// round_half_away_from_zero(residual / step).
std::int64_t QuantizeResidual(double residual, double step);
double Dequantize(std::int64_t index, double step);

std::uint64_t Zigzag(std::int64_t index);
std::int64_t Unzigzag(std::uint64_t code);

// Per-component adaptive contexts, one per (component, prefix bin).
class IndexContexts {
 public:
  BinContext& at(std::size_t component, int bin) {
    return contexts_[component * kContextBins + bin];
  }

 private:
  std::array<BinContext, kSemanticDims * kContextBins> contexts_{};
};

// zigzag + order-0 Exp-Golomb. The prefix is unary (n ones, then a zero)
// for n = floor(log2(u + 1)); the n-bit suffix is bypass coded MSB first.
void EncodeIndex(BinaryEncoder& enc, IndexContexts& ctx, std::size_t component,
                 std::int64_t index);
std::int64_t DecodeIndex(BinaryDecoder& dec, IndexContexts& ctx,
                         std::size_t component);

struct EncodeResult {
  CodedSequence coded;
  // Encoder-side reconstructions, one per inter frame.
  std::vector<SemanticVector> recon;
};

// Closed-loop predictive coding of the inter-frame semantics. Key params
// and steps are rounded to their f32 container form before use so the
// decoder can mirror the loop exactly.
EncodeResult EncodeSequence(const FullBodyParams& key_params,
                            std::span<const std::uint8_t> key_payload,
                            std::span<const SemanticVector> frames,
                            const QuantConfig& cfg, int width, int height,
                            double fps);

struct DecodedSemantics {
  SequenceHeader header;
  std::vector<std::uint8_t> key_payload;
  FullBodyParams key_params;
  std::vector<SemanticVector> frames;
};

DecodedSemantics DecodeSequence(const CodedSequence& cs);

// Key params as carried by the container (f32).
FullBodyParams KeyParamsFromStream(
    const std::array<float, kFullParamDims>& stored);

// kbps = total_bits * fps / (frame_count + 1) / 1000. With include_key the
// key payload and the 332-byte key params block are counted too.
double MeasureRate(const CodedSequence& cs, bool include_key);
std::uint64_t TotalBits(const CodedSequence& cs, bool include_key);

}  // namespace ihvc

#endif  // IHVC_PARAM_CODEC_H_
