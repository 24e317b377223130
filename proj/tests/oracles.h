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

// Independent reference computations used by the unit and acceptance
// suites. Nothing here calls into the code paths it is used to check.

#ifndef IHVC_TESTS_ORACLES_H_
#define IHVC_TESTS_ORACLES_H_

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <vector>

#include <Eigen/Core>

#include "ihvc/body_model.h"
#include "ihvc/motion_field.h"
#include "ihvc/semantics.h"

namespace ihvc::oracle {

// ---------------------------------------------------------------------------
// Entropy model: ideal code length of the adaptive binary model, simulated
// directly from the update rule (p in 1/4096 units, shift-by-32 adaptation).

class AdaptiveModelCost {
 public:
  AdaptiveModelCost() {
    for (auto& row : p_) row.fill(2048);
  }

  // Adds the cost of one residual index of component c.
  void AddIndex(std::size_t c, std::int64_t q) {
    const std::uint64_t u =
        q >= 0 ? 2 * static_cast<std::uint64_t>(q)
               : 2 * static_cast<std::uint64_t>(-q) - 1;
    const std::uint64_t x = u + 1;
    int n = 0;
    while ((x >> (n + 1)) != 0) ++n;
    for (int k = 0; k <= n; ++k) AddBin(c, k, k < n ? 1 : 0);
    bits_ += n;  // suffix, bypass
  }

  void AddBin(std::size_t c, int k, int bit) {
    if (k >= 16) {
      bits_ += 1.0;
      return;
    }
    int& p = p_[c][k];
    const double p1 = p / 4096.0;
    bits_ -= std::log2(bit ? p1 : 1.0 - p1);
    // A 32-bit coder splits at floor(range / 4096) * p with range >= 2^24,
    // so the coded share of a 1 is low by at most 2^-12 relative, and the
    // share of a 0 is high by at most p * 2^-24 absolute.
    if (bit) {
      excess_ -= std::log2(1.0 - 0x1p-12);
    } else {
      deficit_ += std::log2(1.0 + p * 0x1p-24 / (1.0 - p1));
    }
    int next = p + (4096 * bit - p) / 32;
    p = std::min(4095, std::max(1, next));
  }

  double bits() const { return bits_; }
  // Bounds on how far a real range coder may sit above or below bits().
  double excess() const { return excess_; }
  double deficit() const { return deficit_; }

 private:
  std::array<std::array<int, 16>, kSemanticDims> p_{};
  double bits_ = 0.0;
  double excess_ = 0.0;
  double deficit_ = 0.0;
};

// ---------------------------------------------------------------------------
// Forward kinematics with explicit 4x4 homogeneous matrices and a
// hand-written Rodrigues formula.

inline Eigen::Matrix4d RodriguesMatrix(const Vec3& w) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  const double theta = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
  if (theta == 0.0) return m;
  const double kx = w[0] / theta, ky = w[1] / theta, kz = w[2] / theta;
  Eigen::Matrix3d k;
  k << 0, -kz, ky, kz, 0, -kx, -ky, kx, 0;
  const Eigen::Matrix3d r = Eigen::Matrix3d::Identity() + std::sin(theta) * k +
                            (1.0 - std::cos(theta)) * k * k;
  m.block<3, 3>(0, 0) = r;
  return m;
}

inline Eigen::Matrix4d TranslationMatrix(const Eigen::Vector3d& t) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.block<3, 1>(0, 3) = t;
  return m;
}

inline std::array<Eigen::Matrix4d, kNumNodes> BruteForceFk(
    const FullBodyParams& full, const SkeletonTemplate& skel) {
  std::array<Eigen::Matrix4d, kNumNodes> world;
  world[0] = TranslationMatrix({full.trans[0], full.trans[1], full.trans[2]}) *
             RodriguesMatrix(full.rot) * TranslationMatrix(skel.rest_offset[0]);
  for (int i = 1; i < kNumNodes; ++i) {
    world[i] = world[skel.parent[i]] * TranslationMatrix(skel.rest_offset[i]) *
               RodriguesMatrix(full.body[i - 1]);
  }
  return world;
}

// ---------------------------------------------------------------------------
// Exhaustive rasterization: every pixel tests every triangle with a plain
// orientation-normalized edge function.

struct OracleRaster {
  int width = 0, height = 0;
  std::vector<int> face;
  std::vector<std::array<double, 3>> bary;
  std::vector<double> depth;
};

inline bool OracleCovers(Eigen::Vector2d a, Eigen::Vector2d b,
                         Eigen::Vector2d c, const Eigen::Vector2d& p,
                         std::array<double, 3>* bary) {
  auto cross = [](const Eigen::Vector2d& u, const Eigen::Vector2d& v) {
    return u.x() * v.y() - u.y() * v.x();
  };
  const double area = cross(b - a, c - a);
  if (area == 0.0) return false;
  bool swapped = false;
  if (area < 0) {
    std::swap(b, c);
    swapped = true;
  }
  const Eigen::Vector2d verts[3] = {a, b, c};
  double w[3];
  for (int k = 0; k < 3; ++k) {
    // Edge opposite vertex k runs verts[k+1] -> verts[k+2].
    const Eigen::Vector2d& s = verts[(k + 1) % 3];
    const Eigen::Vector2d& e = verts[(k + 2) % 3];
    w[k] = cross(e - s, p - s);
    const double nx = -(e.y() - s.y());
    const double ny = e.x() - s.x();
    const bool top_left = nx > 0 || (nx == 0 && ny > 0);
    if (w[k] < 0 || (w[k] == 0 && !top_left)) return false;
  }
  const double sum = w[0] + w[1] + w[2];
  std::array<double, 3> out = {w[0] / sum, w[1] / sum, w[2] / sum};
  if (swapped) std::swap(out[1], out[2]);
  if (bary) *bary = out;
  return true;
}

inline double OracleInterp(const std::array<double, 3>& b, double v0,
                           double v1, double v2) {
  return v0 + b[1] * (v1 - v0) + b[2] * (v2 - v0);
}

inline OracleRaster BruteForceRaster(const Mesh2D& mesh, int width,
                                     int height) {
  OracleRaster r;
  r.width = width;
  r.height = height;
  const std::size_t n = static_cast<std::size_t>(width) * height;
  r.face.assign(n, -1);
  r.bary.assign(n, {0, 0, 0});
  r.depth.assign(n, std::numeric_limits<double>::infinity());
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const Eigen::Vector2d p(x + 0.5, y + 0.5);
      const std::size_t i = static_cast<std::size_t>(y) * width + x;
      for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
        const Face& fc = mesh.faces[f];
        std::array<double, 3> b;
        if (!OracleCovers(mesh.points[fc[0]], mesh.points[fc[1]],
                          mesh.points[fc[2]], p, &b)) {
          continue;
        }
        const double z = OracleInterp(b, mesh.depth[fc[0]], mesh.depth[fc[1]],
                                      mesh.depth[fc[2]]);
        if (z < r.depth[i]) {
          r.depth[i] = z;
          r.face[i] = static_cast<int>(f);
          r.bary[i] = b;
        }
      }
    }
  }
  return r;
}

struct OracleMotion {
  std::vector<Eigen::Vector2d> flow;
  std::vector<double> occlusion;
};

inline OracleMotion BruteForceMotion(const Mesh2D& ref, const Mesh2D& tgt,
                                     int width, int height) {
  const OracleRaster rr = BruteForceRaster(ref, width, height);
  const OracleRaster tr = BruteForceRaster(tgt, width, height);
  OracleMotion m;
  const std::size_t n = static_cast<std::size_t>(width) * height;
  m.flow.assign(n, Eigen::Vector2d::Zero());
  m.occlusion.assign(n, 1.0);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * width + x;
      const int f = tr.face[i];
      if (f < 0) continue;
      const Face& fc = tgt.faces[f];
      const auto& b = tr.bary[i];
      Eigen::Vector2d d[3];
      for (int k = 0; k < 3; ++k) d[k] = ref.points[fc[k]] - tgt.points[fc[k]];
      const Eigen::Vector2d flow = d[0] + b[1] * (d[1] - d[0]) + b[2] * (d[2] - d[0]);
      m.flow[i] = flow;
      const double ds = OracleInterp(b, ref.depth[fc[0]], ref.depth[fc[1]],
                                     ref.depth[fc[2]]);
      const double sx = std::floor(x + 0.5 + flow.x());
      const double sy = std::floor(y + 0.5 + flow.y());
      if (sx < 0 || sy < 0 || sx >= width || sy >= height) continue;
      const std::size_t j = static_cast<std::size_t>(sy) * width +
                            static_cast<std::size_t>(sx);
      const bool visible = rr.face[j] == f || rr.depth[j] >= ds - 1e-4;
      m.occlusion[i] = visible ? 1.0 : 0.0;
    }
  }
  return m;
}

// Random mesh with vertices on a 1/16 px grid and depths on a 1/64 grid, so
// every edge function is exact in double precision.
inline Mesh2D RandomDyadicMesh(std::mt19937_64& rng, int faces, int width,
                               int height) {
  auto grid = [&rng](double lo, double hi, double q) {
    const auto steps = static_cast<std::uint64_t>((hi - lo) / q);
    return lo + static_cast<double>(rng() % (steps + 1)) * q;
  };
  Mesh2D mesh;
  for (int f = 0; f < faces; ++f) {
    const Eigen::Vector2d center(grid(0, width, 1.0 / 16),
                                 grid(0, height, 1.0 / 16));
    const double depth = grid(0.5, 4.0, 1.0 / 64);
    for (int k = 0; k < 3; ++k) {
      mesh.points.emplace_back(center.x() + grid(-14, 14, 1.0 / 16),
                               center.y() + grid(-14, 14, 1.0 / 16));
      mesh.depth.push_back(depth + grid(-0.25, 0.25, 1.0 / 64));
    }
    mesh.faces.push_back({3 * f, 3 * f + 1, 3 * f + 2});
  }
  return mesh;
}

// Bounding box [x0, y0, x1, y1] of pixels whose owning face satisfies pred;
// all -1 when none.
template <typename Pred>
std::array<int, 4> CoverageBox(const RasterMap& raster, Pred pred) {
  std::array<int, 4> box = {std::numeric_limits<int>::max(),
                            std::numeric_limits<int>::max(), -1, -1};
  for (int y = 0; y < raster.height; ++y) {
    for (int x = 0; x < raster.width; ++x) {
      const int f = raster.face[raster.Index(x, y)];
      if (f == kNoFace || !pred(f)) continue;
      box[0] = std::min(box[0], x);
      box[1] = std::min(box[1], y);
      box[2] = std::max(box[2], x);
      box[3] = std::max(box[3], y);
    }
  }
  if (box[2] < 0) box = {-1, -1, -1, -1};
  return box;
}

}  // namespace ihvc::oracle

#endif  // IHVC_TESTS_ORACLES_H_
