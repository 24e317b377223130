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

#include "ihvc/motion_field.h"

#include <bit>
#include <cmath>
#include <string>

#include "ihvc/error.h"

namespace ihvc {

MotionField DenseMotion(const Mesh2D& ref, const Mesh2D& tgt, int width,
                        int height) {
  return DenseMotion(ref, Rasterize(ref, width, height), tgt, width, height);
}

MotionField DenseMotion(const Mesh2D& ref, const RasterMap& ref_raster,
                        const Mesh2D& tgt, int width, int height) {
  if (ref.faces != tgt.faces || ref.points.size() != tgt.points.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "reference and target meshes differ in topology");
  }
  if (ref_raster.width != width || ref_raster.height != height) {
    throw Error(ErrorCode::kDimensionMismatch,
                "reference raster size mismatch");
  }
  const RasterMap target = Rasterize(tgt, width, height);
  MotionField mf;
  mf.width = width;
  mf.height = height;
  const std::size_t n = static_cast<std::size_t>(width) * height;
  mf.flow.assign(n, Eigen::Vector2d::Zero());
  mf.occlusion.assign(n, 1.0);

  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const std::size_t i = target.Index(x, y);
      const int f = target.face[i];
      if (f == kNoFace) continue;
      const Face& face = tgt.faces[f];
      const auto& b = target.bary[i];
      const Eigen::Vector2d d0 = ref.points[face[0]] - tgt.points[face[0]];
      const Eigen::Vector2d d1 = ref.points[face[1]] - tgt.points[face[1]];
      const Eigen::Vector2d d2 = ref.points[face[2]] - tgt.points[face[2]];
      const Eigen::Vector2d flow = d0 + b[1] * (d1 - d0) + b[2] * (d2 - d0);
      mf.flow[i] = flow;

      const double source_depth = InterpolateAttribute(
          b, ref.depth[face[0]], ref.depth[face[1]], ref.depth[face[2]]);
      const double sx = std::floor(x + 0.5 + flow.x());
      const double sy = std::floor(y + 0.5 + flow.y());
      if (sx < 0 || sy < 0 || sx >= width || sy >= height) continue;
      const std::size_t j =
          ref_raster.Index(static_cast<int>(sx), static_cast<int>(sy));
      const bool visible = ref_raster.face[j] == f ||
                           ref_raster.depth[j] >= source_depth - kDepthEpsilon;
      mf.occlusion[i] = visible ? 1.0 : 0.0;
    }
  }
  return mf;
}

std::vector<std::uint8_t> FlowToF32Planes(const MotionField& mf) {
  std::vector<std::uint8_t> out;
  out.reserve(mf.flow.size() * 8);
  auto put = [&out](float v) {
    const auto bits = std::bit_cast<std::uint32_t>(v);
    for (int k = 0; k < 4; ++k) {
      out.push_back(static_cast<std::uint8_t>(bits >> (8 * k)));
    }
  };
  for (const auto& f : mf.flow) put(static_cast<float>(f.x()));
  for (const auto& f : mf.flow) put(static_cast<float>(f.y()));
  return out;
}

std::vector<std::uint8_t> OcclusionToPgm(const MotionField& mf) {
  const std::string header = "P5\n" + std::to_string(mf.width) + " " +
                             std::to_string(mf.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  for (double o : mf.occlusion) {
    out.push_back(static_cast<std::uint8_t>(std::lround(o * 255.0)));
  }
  return out;
}

}  // namespace ihvc
