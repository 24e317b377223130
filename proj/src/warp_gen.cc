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

#include "ihvc/warp_gen.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "ihvc/error.h"

namespace ihvc {

void SampleBilinear(const Image& image, double x, double y, double out[3]) {
  x = std::clamp(x, 0.0, static_cast<double>(image.width - 1));
  y = std::clamp(y, 0.0, static_cast<double>(image.height - 1));
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const int x1 = std::min(x0 + 1, image.width - 1);
  const int y1 = std::min(y0 + 1, image.height - 1);
  const double tx = x - x0;
  const double ty = y - y0;
  const std::uint8_t* p00 = image.at(x0, y0);
  const std::uint8_t* p10 = image.at(x1, y0);
  const std::uint8_t* p01 = image.at(x0, y1);
  const std::uint8_t* p11 = image.at(x1, y1);
  for (int c = 0; c < 3; ++c) {
    const double top = (1.0 - tx) * p00[c] + tx * p10[c];
    const double bottom = (1.0 - tx) * p01[c] + tx * p11[c];
    out[c] = (1.0 - ty) * top + ty * bottom;
  }
}

Image Warp(const Image& ref, const MotionField& mf) {
  if (ref.width != mf.width || ref.height != mf.height) {
    throw Error(ErrorCode::kDimensionMismatch,
                "reference image and motion field sizes differ");
  }
  Image out(ref.width, ref.height);
  for (int y = 0; y < ref.height; ++y) {
    for (int x = 0; x < ref.width; ++x) {
      const std::size_t i = mf.Index(x, y);
      const double occlusion = mf.occlusion[i];
      if (occlusion == 0.0) continue;
      double sample[3];
      SampleBilinear(ref, x + mf.flow[i].x(), y + mf.flow[i].y(), sample);
      std::uint8_t* px = out.at(x, y);
      for (int c = 0; c < 3; ++c) {
        px[c] = static_cast<std::uint8_t>(
            std::clamp(std::round(occlusion * sample[c]), 0.0, 255.0));
      }
    }
  }
  return out;
}

FrameSynthesizer::FrameSynthesizer(const FullBodyParams& key_params,
                                   Image key_image)
    : key_params_(key_params), key_image_(std::move(key_image)) {
  std::tie(key_semantics_, derived_) = SplitFullParams(key_params_);
  body_ = BuildTemplate(derived_.shape);
  key_mesh_ = ProjectFrame(key_semantics_);
  key_raster_ = Rasterize(key_mesh_, key_image_.width, key_image_.height);
}

Mesh2D FrameSynthesizer::ProjectFrame(const SemanticVector& sem) const {
  const FullBodyParams full = MergeParams(sem, derived_);
  return Project(PoseMesh(full, body_), sem.loc, key_image_.width,
                 key_image_.height);
}

MotionField FrameSynthesizer::Motion(const SemanticVector& sem) const {
  return DenseMotion(key_mesh_, key_raster_, ProjectFrame(sem),
                     key_image_.width, key_image_.height);
}

Image FrameSynthesizer::Render(const SemanticVector& sem) const {
  return Warp(key_image_, Motion(sem));
}

Image DecodeKeyImage(const DecodedSemantics& decoded) {
  Image key = DecodePng(decoded.key_payload);
  if (key.width != decoded.header.width ||
      key.height != decoded.header.height) {
    throw Error(ErrorCode::kDimensionMismatch,
                "key frame dimensions mismatch");
  }
  return key;
}

std::vector<Image> RenderFrames(const FrameSynthesizer& synth,
                                std::span<const SemanticVector> frames) {
  std::vector<Image> out;
  out.reserve(frames.size());
  for (const SemanticVector& sem : frames) out.push_back(synth.Render(sem));
  return out;
}

std::vector<Image> ReconstructSequence(const CodedSequence& cs) {
  const DecodedSemantics decoded = DecodeSequence(cs);
  const FrameSynthesizer synth(decoded.key_params, DecodeKeyImage(decoded));
  return RenderFrames(synth, decoded.frames);
}

}  // namespace ihvc
