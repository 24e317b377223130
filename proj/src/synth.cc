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

#include "ihvc/synth.h"

#include <cmath>
#include <numbers>
#include <random>

#include "ihvc/body_model.h"
#include "ihvc/error.h"
#include "ihvc/motion_field.h"

namespace ihvc {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double Wave(double amplitude, double freq, double phase, double t) {
  return amplitude * std::sin(kTwoPi * freq * t + phase);
}

// Uniform in [0, 1) from the raw 64-bit engine output; the standard
// distributions are not reproducible across library implementations.
double Uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct Band {
  double weight[3];
  double freq[3];
  double phase[3];

  double Eval(double amplitude, double t) const {
    double acc = 0.0;
    for (int k = 0; k < 3; ++k) acc += Wave(weight[k], freq[k], phase[k], t);
    return amplitude * acc;
  }
};

Band RandomBand(std::mt19937_64& rng) {
  Band band{};
  double total = 0.0;
  for (int k = 0; k < 3; ++k) {
    band.weight[k] = 0.2 + Uniform(rng);
    total += band.weight[k];
  }
  for (int k = 0; k < 3; ++k) {
    band.weight[k] /= total;
    band.freq[k] = 0.1 + (kSynthMaxFrequency - 0.1) * Uniform(rng);
    band.phase[k] = kTwoPi * Uniform(rng);
  }
  return band;
}

SemanticVector Snap(SemanticVector sem) {
  auto flat = sem.Flatten();
  for (double& v : flat) v = SnapToSynthGrid(v);
  return SemanticVector::FromFlat(flat);
}

const std::uint8_t kPartColors[5][3] = {
    {70, 110, 190},   // torso
    {50, 70, 140},    // leg
    {200, 150, 120},  // arm
    {225, 180, 150},  // head
    {235, 190, 160},  // hand
};
const std::uint8_t kBackground[3] = {48, 52, 60};

}  // namespace

const std::vector<std::string>& PresetNames() {
  static const std::vector<std::string> names = {"nod_head", "wave_arms",
                                                 "walk_sway", "random_smooth"};
  return names;
}

std::optional<Preset> ParsePreset(const std::string& name) {
  if (name == "nod_head") return Preset::kNodHead;
  if (name == "wave_arms") return Preset::kWaveArms;
  if (name == "walk_sway") return Preset::kWalkSway;
  if (name == "random_smooth") return Preset::kRandomSmooth;
  return std::nullopt;
}

const char* PresetName(Preset preset) {
  switch (preset) {
    case Preset::kNodHead: return "nod_head";
    case Preset::kWaveArms: return "wave_arms";
    case Preset::kWalkSway: return "walk_sway";
    case Preset::kRandomSmooth: return "random_smooth";
  }
  return "?";
}

double SnapToSynthGrid(double v) {
  return std::round(v / kSynthGrid) * kSynthGrid;
}

double RandomSmoothDeltaBound(double amplitude, double fps) {
  return amplitude * kTwoPi * kSynthMaxFrequency / fps + kSynthGrid;
}

FullBodyParams SynthKeyParams() {
  FullBodyParams key;
  // Arms lowered a little from the T-pose.
  key.Joint(11) = {0.0, 0.0, SnapToSynthGrid(0.35)};
  key.Joint(12) = {0.0, 0.0, SnapToSynthGrid(-0.35)};
  key.Joint(13) = {0.0, SnapToSynthGrid(-0.15), 0.0};
  key.Joint(14) = {0.0, SnapToSynthGrid(0.15), 0.0};
  key.loc = {0.5, 0.5, 0.875, 0.875};
  return key;
}

SynthResult Synthesize(const SynthOptions& options) {
  if (options.frames < 0) {
    throw Error(ErrorCode::kValidation, "frame count must be >= 0");
  }
  if (!(options.fps > 0.0) || !std::isfinite(options.fps)) {
    throw Error(ErrorCode::kValidation, "fps must be > 0");
  }
  if (!(options.amplitude >= 0.0 && options.amplitude <= 1.0)) {
    throw Error(ErrorCode::kValidation, "amplitude must lie in [0, 1]");
  }
  if (options.width < 1 || options.width > 65535 || options.height < 1 ||
      options.height > 65535) {
    throw Error(ErrorCode::kValidation, "width/height out of range");
  }

  SynthResult result;
  SemanticsDocument& doc = result.doc;
  doc.width = options.width;
  doc.height = options.height;
  doc.fps = options.fps;
  doc.key_full_params = SynthKeyParams();
  const SemanticVector base = SplitFullParams(doc.key_full_params).first;

  std::mt19937_64 rng(options.seed);
  std::array<Band, kSemanticDims> bands{};
  for (Band& band : bands) band = RandomBand(rng);
  const double a = options.amplitude;

  for (int l = 0; l < options.frames; ++l) {
    const double t = (l + 1) / options.fps;
    SemanticVector sem = base;
    switch (options.preset) {
      case Preset::kNodHead:
        sem.Joint(15)[0] += Wave(0.12, 0.5, 0.0, t);
        sem.Joint(16)[0] += Wave(0.35, 0.5, 0.0, t);
        sem.Joint(16)[1] += Wave(0.10, 0.25, 0.0, t);
        sem.Joint(17)[0] += 0.05 - 0.05 * std::cos(kTwoPi * 1.0 * t);
        break;
      case Preset::kWaveArms:
        sem.Joint(18)[2] += Wave(0.6, 0.8, 0.0, t);
        sem.Joint(20)[2] += 0.4 * (std::sin(kTwoPi * 0.8 * t + 0.7) - std::sin(0.7));
        sem.Joint(19)[2] -= Wave(0.6, 0.8, 0.0, t);
        sem.Joint(21)[2] -= 0.4 * (std::sin(kTwoPi * 0.8 * t + 0.7) - std::sin(0.7));
        sem.Joint(18)[1] += Wave(0.2, 0.4, 0.0, t);
        sem.Joint(19)[1] -= Wave(0.2, 0.4, 0.0, t);
        break;
      case Preset::kWalkSway:
        sem.trans[0] += Wave(0.04, 0.5, 0.0, t);
        sem.rot[1] += Wave(0.25, 0.5, 0.0, t);
        sem.loc[0] += Wave(0.06, 0.25, 0.0, t);
        sem.loc[1] += Wave(0.01, 1.0, 0.0, t);
        break;
      case Preset::kRandomSmooth: {
        auto flat = sem.Flatten();
        for (std::size_t c = 0; c < kSemanticDims; ++c) {
          double amp = a;
          if (c >= kTransOffset && c < kRotOffset) amp = 0.25 * a;
          if (c >= kLocOffset) amp = (c < kLocOffset + 2 ? 0.05 : 0.02) * a;
          // Anchored at the key frame (t = 0) so the first step is smooth too.
          flat[c] += bands[c].Eval(amp, t) - bands[c].Eval(amp, 0.0);
        }
        sem = SemanticVector::FromFlat(flat);
        break;
      }
    }
    doc.frames.push_back(Snap(sem));
  }
  result.key = RenderBodyImage(doc.key_full_params, options.width,
                               options.height);
  return result;
}

Image RenderBodyImage(const FullBodyParams& full, int width, int height) {
  const BodyTemplate tmpl = BuildTemplate(full.shape);
  const BodyMesh mesh = PoseMesh(full, tmpl);
  const Mesh2D projected = Project(mesh, full.loc, width, height);
  const RasterMap raster = Rasterize(projected, width, height);

  std::vector<std::array<std::uint8_t, 3>> face_color(mesh.faces.size());
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const Face& face = mesh.faces[f];
    const Eigen::Vector3d n =
        (mesh.vertices[face[1]] - mesh.vertices[face[0]])
            .cross(mesh.vertices[face[2]] - mesh.vertices[face[0]])
            .normalized();
    const std::size_t segment = f / kFacesPerSegment;
    const std::size_t local = f % kFacesPerSegment;
    double shade = 0.45 + 0.55 * std::abs(n.z());
    // Alternate the side quads so the texture shows motion.
    if (local >= kRingVertices && local < 3 * kRingVertices &&
        ((local - kRingVertices) / 2) % 2 == 1) {
      shade *= 0.85;
    }
    const auto part = static_cast<int>(tmpl.segments[segment].part);
    for (int c = 0; c < 3; ++c) {
      face_color[f][c] =
          static_cast<std::uint8_t>(std::lround(kPartColors[part][c] * shade));
    }
  }

  Image image(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const int f = raster.face[raster.Index(x, y)];
      std::uint8_t* px = image.at(x, y);
      for (int c = 0; c < 3; ++c) {
        px[c] = f == kNoFace ? kBackground[c] : face_color[f][c];
      }
    }
  }
  return image;
}

}  // namespace ihvc
