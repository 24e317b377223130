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

#ifndef IHVC_WARP_GEN_H_
#define IHVC_WARP_GEN_H_

#include <span>
#include <vector>

#include "ihvc/body_model.h"
#include "ihvc/bitstream.h"
#include "ihvc/image.h"
#include "ihvc/motion_field.h"
#include "ihvc/param_codec.h"
#include "ihvc/semantics.h"

namespace ihvc {

// Clamp-to-edge bilinear sample at pixel-index coordinates (pixel (x, y)
// sits at (x, y)), per channel.
void SampleBilinear(const Image& image, double x, double y, double out[3]);

// out(p) = occlusion(p) * bilinear(ref, p + flow(p)), rounded half away
// from zero to 8 bits.
Image Warp(const Image& ref, const MotionField& mf);

// Reconstructs frames from a key image and key params. Holds the key
// template, projected key mesh and key raster, so it is cheap to call
// Render repeatedly; const methods are safe to call concurrently.
class FrameSynthesizer {
 public:
  FrameSynthesizer(const FullBodyParams& key_params, Image key_image);

  const Image& key_image() const { return key_image_; }
  const FullBodyParams& key_params() const { return key_params_; }
  const KeyDerivedParams& derived() const { return derived_; }
  const SemanticVector& key_semantics() const { return key_semantics_; }
  const BodyTemplate& body() const { return body_; }
  const Mesh2D& key_mesh() const { return key_mesh_; }
  const RasterMap& key_raster() const { return key_raster_; }

  Mesh2D ProjectFrame(const SemanticVector& sem) const;
  MotionField Motion(const SemanticVector& sem) const;
  Image Render(const SemanticVector& sem) const;

 private:
  FullBodyParams key_params_;
  SemanticVector key_semantics_;
  KeyDerivedParams derived_;
  Image key_image_;
  BodyTemplate body_;
  Mesh2D key_mesh_;
  RasterMap key_raster_;
};

// Decodes the key payload and checks it against the header dimensions.
Image DecodeKeyImage(const DecodedSemantics& decoded);

std::vector<Image> RenderFrames(const FrameSynthesizer& synth,
                                std::span<const SemanticVector> frames);

std::vector<Image> ReconstructSequence(const CodedSequence& cs);

}  // namespace ihvc

#endif  // IHVC_WARP_GEN_H_
