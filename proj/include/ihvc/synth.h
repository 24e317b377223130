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

#ifndef IHVC_SYNTH_H_
#define IHVC_SYNTH_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ihvc/image.h"
#include "ihvc/json_io.h"
#include "ihvc/semantics.h"

namespace ihvc {

// Synthetic semantics sources standing in for a pixel-domain regressor.
//   nod_head      joints 15..17 oscillate; everything else constant
//   wave_arms     joints 18..21 oscillate
//   walk_sway     translation, yaw and box position sway
//   random_smooth every component follows a band-limited random signal
enum class Preset { kNodHead, kWaveArms, kWalkSway, kRandomSmooth };

const std::vector<std::string>& PresetNames();
std::optional<Preset> ParsePreset(const std::string& name);
const char* PresetName(Preset preset);

// Generated values are snapped to this grid so they survive f32 storage
// and quantization at the step floor without error.
inline constexpr double kSynthGrid = 1.0 / (1 << 20);
// Highest sinusoid frequency any preset uses, in Hz.
inline constexpr double kSynthMaxFrequency = 1.0;

struct SynthOptions {
  Preset preset = Preset::kNodHead;
  int frames = 150;
  double fps = 30.0;
  std::uint64_t seed = 1;
  int width = 384;
  int height = 384;
  // Peak angle amplitude (radians) for random_smooth, in [0, 1].
  double amplitude = 0.3;
};

struct SynthResult {
  SemanticsDocument doc;
  Image key;
};

double SnapToSynthGrid(double v);

// Bound on |x[l+1] - x[l]| for any random_smooth component:
// amplitude * 2 pi * f_max / fps, plus one grid step of rounding.
double RandomSmoothDeltaBound(double amplitude, double fps);

FullBodyParams SynthKeyParams();
SynthResult Synthesize(const SynthOptions& options);

// Flat-shaded raster of the posed template over a flat background.
Image RenderBodyImage(const FullBodyParams& full, int width, int height);

}  // namespace ihvc

#endif  // IHVC_SYNTH_H_
