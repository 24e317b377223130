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

#ifndef IHVC_MOTION_FIELD_H_
#define IHVC_MOTION_FIELD_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ihvc/body_model.h"

namespace ihvc {

inline constexpr int kNoFace = -1;
// Self-visibility tolerance in model depth units.
inline constexpr double kDepthEpsilon = 1e-4;

// Per-pixel rasterization result. Pixel (x, y) samples the point
// (x + 0.5, y + 0.5). Background pixels carry kNoFace and +inf depth.
struct RasterMap {
  int width = 0;
  int height = 0;
  std::vector<int> face;
  std::vector<std::array<double, 3>> bary;
  std::vector<double> depth;

  std::size_t Index(int x, int y) const {
    return static_cast<std::size_t>(y) * width + x;
  }
};

// Coverage test for a single triangle with the top-left fill rule. Returns
// false for degenerate triangles. On success writes barycentrics.
bool CoversPoint(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                 const Eigen::Vector2d& c, const Eigen::Vector2d& p,
                 std::array<double, 3>* bary);

// b0 z0 + b1 z1 + b2 z2, evaluated relative to the first vertex.
double InterpolateAttribute(const std::array<double, 3>& bary, double v0,
                            double v1, double v2);

// Z-buffered rasterization; the smallest depth wins and ties go to the
// lower face index.
RasterMap Rasterize(const Mesh2D& mesh, int width, int height);

// Backward flow (source = target + flow) and binary occlusion, both
// row-major at image resolution.
struct MotionField {
  int width = 0;
  int height = 0;
  std::vector<Eigen::Vector2d> flow;
  std::vector<double> occlusion;

  std::size_t Index(int x, int y) const {
    return static_cast<std::size_t>(y) * width + x;
  }
};

// Throws Error(kDimensionMismatch) when the meshes do not share faces.
MotionField DenseMotion(const Mesh2D& ref, const Mesh2D& tgt, int width,
                        int height);
// Same, reusing a reference raster produced by Rasterize(ref, ...).
MotionField DenseMotion(const Mesh2D& ref, const RasterMap& ref_raster,
                        const Mesh2D& tgt, int width, int height);

// Debug dumps: flow as two little-endian f32 planes (x then y), occlusion
// as binary PGM.
std::vector<std::uint8_t> FlowToF32Planes(const MotionField& mf);
std::vector<std::uint8_t> OcclusionToPgm(const MotionField& mf);

}  // namespace ihvc

#endif  // IHVC_MOTION_FIELD_H_
