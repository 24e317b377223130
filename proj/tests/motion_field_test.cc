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

#include <random>

#include <gtest/gtest.h>

#include "ihvc/body_model.h"
#include "ihvc/error.h"
#include "oracles.h"
#include "test_util.h"

namespace ihvc {
namespace {

using Eigen::Vector2d;

Mesh2D Quad(double x0, double y0, double x1, double y1, double depth,
            Mesh2D mesh = {}) {
  const int base = static_cast<int>(mesh.points.size());
  mesh.points.insert(mesh.points.end(), {Vector2d(x0, y0), Vector2d(x1, y0),
                                         Vector2d(x1, y1), Vector2d(x0, y1)});
  mesh.depth.insert(mesh.depth.end(), 4, depth);
  mesh.faces.push_back({base, base + 1, base + 2});
  mesh.faces.push_back({base, base + 2, base + 3});
  return mesh;
}

Mesh2D Shifted(Mesh2D mesh, const Vector2d& d) {
  for (Vector2d& p : mesh.points) p += d;
  return mesh;
}

// Jittered grid of quads split along alternating diagonals, vertices on a
// 1/16 px lattice.
Mesh2D JitteredGrid(std::mt19937_64& rng, int cells, double size) {
  Mesh2D mesh;
  const int n = cells + 1;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const bool border = i == 0 || j == 0 || i == cells || j == cells;
      const double jx = border ? 0 : static_cast<double>(rng() % 65) / 16 - 2;
      const double jy = border ? 0 : static_cast<double>(rng() % 65) / 16 - 2;
      mesh.points.emplace_back(2 + i * size + jx, 2 + j * size + jy);
      mesh.depth.push_back(1.0);
    }
  }
  for (int j = 0; j < cells; ++j) {
    for (int i = 0; i < cells; ++i) {
      const int a = j * n + i, b = a + 1, c = a + n + 1, d = a + n;
      if ((i + j) % 2) {
        mesh.faces.push_back({a, b, c});
        mesh.faces.push_back({a, c, d});
      } else {
        mesh.faces.push_back({a, b, d});
        mesh.faces.push_back({b, c, d});
      }
    }
  }
  return mesh;
}

int CoverageCount(const Mesh2D& mesh, const Vector2d& p) {
  int count = 0;
  for (const Face& f : mesh.faces) {
    count += CoversPoint(mesh.points[f[0]], mesh.points[f[1]],
                         mesh.points[f[2]], p, nullptr);
  }
  return count;
}

TEST(RasterizeTest, SingleTriangleCoverage) {
  Mesh2D mesh;
  mesh.points = {Vector2d(10, 10), Vector2d(32, 10), Vector2d(10, 32)};
  mesh.depth = {1, 1, 1};
  mesh.faces = {{0, 1, 2}};
  const RasterMap r = Rasterize(mesh, 48, 48);
  for (int y = 10; y <= 20; ++y) {
    for (int x = 10; x <= 20; ++x) {
      EXPECT_EQ(r.face[r.Index(x, y)], 0) << x << "," << y;
      EXPECT_EQ(r.depth[r.Index(x, y)], 1.0);
    }
  }
  for (int y = 0; y < 48; ++y) {
    for (int x = 0; x < 48; ++x) {
      const bool inside = x >= 10 && y >= 10 && (x + 0.5 - 10) + (y + 0.5 - 10) < 22;
      EXPECT_EQ(r.face[r.Index(x, y)], inside ? 0 : kNoFace) << x << "," << y;
    }
  }
}

TEST(RasterizeTest, NearerTriangleWins) {
  for (bool near_first : {true, false}) {
    Mesh2D mesh;
    mesh.points = {Vector2d(4, 4), Vector2d(28, 6), Vector2d(8, 27),
                   Vector2d(4, 4), Vector2d(28, 6), Vector2d(8, 27)};
    mesh.depth = {near_first ? 1.0 : 2.0, near_first ? 1.0 : 2.0,
                  near_first ? 1.0 : 2.0, near_first ? 2.0 : 1.0,
                  near_first ? 2.0 : 1.0, near_first ? 2.0 : 1.0};
    mesh.faces = {{0, 1, 2}, {3, 4, 5}};
    const RasterMap r = Rasterize(mesh, 32, 32);
    int owned = 0;
    for (std::size_t i = 0; i < r.face.size(); ++i) {
      if (r.face[i] == kNoFace) continue;
      ++owned;
      EXPECT_EQ(r.face[i], near_first ? 0 : 1);
      EXPECT_EQ(r.depth[i], 1.0);
    }
    EXPECT_GT(owned, 100);
  }
}

TEST(RasterizeTest, EqualDepthGoesToLowerFace) {
  Mesh2D mesh = Quad(0, 0, 16, 16, 1.0);
  mesh = Quad(0, 0, 16, 16, 1.0, mesh);
  const RasterMap r = Rasterize(mesh, 16, 16);
  for (int f : r.face) EXPECT_LT(f, 2);
}

TEST(RasterizeTest, OffscreenMeshIsEmpty) {
  const RasterMap r = Rasterize(Quad(-50, -50, -10, -10, 1.0), 32, 32);
  for (int f : r.face) EXPECT_EQ(f, kNoFace);
}

TEST(RasterizeTest, BarycentricsAreConsistent) {
  std::mt19937_64 rng(3);
  const Mesh2D mesh = oracle::RandomDyadicMesh(rng, 20, 64, 64);
  const RasterMap r = Rasterize(mesh, 64, 64);
  for (std::size_t i = 0; i < r.face.size(); ++i) {
    if (r.face[i] == kNoFace) continue;
    const auto& b = r.bary[i];
    for (double v : b) EXPECT_GE(v, -1e-6);
    EXPECT_NEAR(b[0] + b[1] + b[2], 1.0, 1e-6);
    const Face& f = mesh.faces[r.face[i]];
    EXPECT_EQ(r.depth[i], InterpolateAttribute(b, mesh.depth[f[0]],
                                               mesh.depth[f[1]],
                                               mesh.depth[f[2]]));
  }
}

TEST(RasterizeTest, SharedEdgesNeverDoubleCover) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const Mesh2D grid = JitteredGrid(rng, 6, 9.5);
    for (int y = 0; y < 64; ++y) {
      for (int x = 0; x < 64; ++x) {
        const Vector2d p(x + 0.5, y + 0.5);
        const int count = CoverageCount(grid, p);
        const bool interior = p.x() > 2 && p.x() < 59 && p.y() > 2 && p.y() < 59;
        ASSERT_LE(count, 1) << "pixel " << x << "," << y;
        if (interior) ASSERT_EQ(count, 1) << "hole at " << x << "," << y;
      }
    }
  }
}

TEST(RasterizeTest, FanAroundPixelCenterCoversOnce) {
  // Twelve triangles sharing a vertex placed exactly on a pixel center,
  // with spokes through further pixel centers.
  Mesh2D mesh;
  mesh.points.emplace_back(16.5, 16.5);
  mesh.depth.push_back(1);
  const int spokes[][2] = {{10, 0},  {10, 5},  {10, 10}, {0, 10},
                           {-5, 10}, {-10, 10}, {-10, 0}, {-10, -3},
                           {-10, -10}, {0, -10}, {4, -10}, {10, -10}};
  for (const auto& s : spokes) {
    mesh.points.emplace_back(16.5 + s[0], 16.5 + s[1]);
    mesh.depth.push_back(1);
  }
  for (int k = 0; k < 12; ++k) mesh.faces.push_back({0, 1 + k, 1 + (k + 1) % 12});
  for (int y = 0; y < 33; ++y) {
    for (int x = 0; x < 33; ++x) {
      ASSERT_LE(CoverageCount(mesh, Vector2d(x + 0.5, y + 0.5)), 1);
    }
  }
  EXPECT_EQ(CoverageCount(mesh, Vector2d(16.5, 16.5)), 1);
}

TEST(RasterizeTest, BodyMeshHasNoDoubleCoverageWithinSegments) {
  const BodyTemplate t = BuildTemplate({});
  const Mesh2D mesh = Project(t.rest, {0.5, 0.5, 0.875, 0.875}, 96, 96);
  // Compare the z-buffered raster with the exhaustive one.
  const RasterMap r = Rasterize(mesh, 96, 96);
  const auto o = oracle::BruteForceRaster(mesh, 96, 96);
  EXPECT_EQ(r.face, o.face);
}

TEST(DenseMotionTest, IdentityIsExact) {
  const BodyTemplate t = BuildTemplate({});
  std::mt19937_64 rng(8);
  FullBodyParams full = ::ihvc::testing::RandomFullParams(rng, 0.5);
  const Mesh2D mesh =
      Project(PoseMesh(full, BuildTemplate(full.shape)), full.loc, 128, 128);
  const MotionField mf = DenseMotion(mesh, mesh, 128, 128);
  for (std::size_t i = 0; i < mf.flow.size(); ++i) {
    ASSERT_EQ(mf.flow[i], Vector2d::Zero());
    ASSERT_EQ(mf.occlusion[i], 1.0);
  }
}

TEST(DenseMotionTest, TranslationGivesNegatedFlow) {
  std::mt19937_64 rng(10);
  const Mesh2D ref = oracle::RandomDyadicMesh(rng, 20, 64, 64);
  const Mesh2D tgt = Shifted(ref, {10, 0});
  const MotionField mf = DenseMotion(ref, tgt, 64, 64);
  const RasterMap tr = Rasterize(tgt, 64, 64);
  int covered = 0;
  for (std::size_t i = 0; i < mf.flow.size(); ++i) {
    if (tr.face[i] == kNoFace) {
      EXPECT_EQ(mf.flow[i], Vector2d::Zero());
      EXPECT_EQ(mf.occlusion[i], 1.0);
      continue;
    }
    ++covered;
    ASSERT_EQ(mf.flow[i], Vector2d(-10, 0));
  }
  EXPECT_GT(covered, 0);
}

TEST(DenseMotionTest, BodyTranslationFlowIsConstant) {
  const BodyTemplate t = BuildTemplate({});
  const Mesh2D ref = Project(t.rest, {0.5, 0.5, 0.875, 0.875}, 128, 128);
  const Mesh2D tgt = Shifted(ref, {10, 0});
  const MotionField mf = DenseMotion(ref, tgt, 128, 128);
  const RasterMap tr = Rasterize(tgt, 128, 128);
  for (std::size_t i = 0; i < mf.flow.size(); ++i) {
    if (tr.face[i] == kNoFace) continue;
    ASSERT_NEAR(mf.flow[i].x(), -10.0, 1e-12);
    ASSERT_NEAR(mf.flow[i].y(), 0.0, 1e-12);
  }
}

TEST(DenseMotionTest, IntegerShiftOfTargetIsEquivariant) {
  // Pixel q in the shifted target sees the surface point that q - (du, dv)
  // saw before, so its flow differs by exactly -(du, dv) in real
  // arithmetic.
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 20; ++trial) {
    const Mesh2D ref = oracle::RandomDyadicMesh(rng, 12, 64, 64);
    Mesh2D tgt = ref;
    for (Vector2d& p : tgt.points) {
      p += Vector2d(static_cast<double>(rng() % 97) / 16 - 3,
                    static_cast<double>(rng() % 97) / 16 - 3);
    }
    const int du = static_cast<int>(rng() % 11) - 5;
    const int dv = static_cast<int>(rng() % 11) - 5;
    const MotionField a = DenseMotion(ref, tgt, 64, 64);
    const MotionField b = DenseMotion(ref, Shifted(tgt, Vector2d(du, dv)), 64, 64);
    const RasterMap ra = Rasterize(tgt, 64, 64);
    for (int y = 0; y < 64; ++y) {
      for (int x = 0; x < 64; ++x) {
        const int xs = x + du, ys = y + dv;
        if (xs < 0 || ys < 0 || xs >= 64 || ys >= 64) continue;
        if (ra.face[ra.Index(x, y)] == kNoFace) continue;
        // Same face and barycentrics; only the rounding of the final sum
        // may differ.
        const Vector2d diff = b.flow[b.Index(xs, ys)] -
                              (a.flow[a.Index(x, y)] - Vector2d(du, dv));
        ASSERT_LE(diff.cwiseAbs().maxCoeff(), 1e-12);
      }
    }
  }
}

TEST(DenseMotionTest, RevealedRegionIsOccluded) {
  // Back quad [8,56]^2 at depth 2; front quad [20,36]^2 at depth 1 moves
  // 16 px right, revealing the back quad behind its old position.
  Mesh2D ref = Quad(8, 8, 56, 56, 2.0);
  ref = Quad(20, 20, 36, 36, 1.0, ref);
  Mesh2D tgt = ref;
  for (int k = 4; k < 8; ++k) tgt.points[k].x() += 16;
  const MotionField mf = DenseMotion(ref, tgt, 64, 64);
  const auto oracle_mf = oracle::BruteForceMotion(ref, tgt, 64, 64);
  for (int y = 0; y < 64; ++y) {
    for (int x = 0; x < 64; ++x) {
      const std::size_t i = mf.Index(x, y);
      const bool revealed = x >= 20 && x < 36 && y >= 20 && y < 36;
      EXPECT_EQ(mf.occlusion[i], revealed ? 0.0 : 1.0) << x << "," << y;
      EXPECT_EQ(mf.occlusion[i], oracle_mf.occlusion[i]);
    }
  }
}

TEST(DenseMotionTest, MatchesExhaustiveOracle) {
  std::mt19937_64 rng(2025);
  for (int trial = 0; trial < 60; ++trial) {
    const int faces = 1 + static_cast<int>(rng() % 20);
    const Mesh2D ref = oracle::RandomDyadicMesh(rng, faces, 64, 64);
    Mesh2D tgt = ref;
    for (std::size_t k = 0; k < tgt.points.size(); ++k) {
      tgt.points[k] += Vector2d(static_cast<double>(rng() % 129) / 16 - 4,
                                static_cast<double>(rng() % 129) / 16 - 4);
      tgt.depth[k] += static_cast<double>(rng() % 33) / 64 - 0.25;
    }
    const MotionField mf = DenseMotion(ref, tgt, 64, 64);
    const auto expect = oracle::BruteForceMotion(ref, tgt, 64, 64);
    ASSERT_EQ(mf.flow, expect.flow) << "trial " << trial;
    ASSERT_EQ(mf.occlusion, expect.occlusion) << "trial " << trial;
    const RasterMap r = Rasterize(ref, 64, 64);
    const auto o = oracle::BruteForceRaster(ref, 64, 64);
    ASSERT_EQ(r.face, o.face);
    ASSERT_EQ(r.depth, o.depth);
  }
}

TEST(DenseMotionTest, OcclusionIsBinaryAndFlowFinite) {
  std::mt19937_64 rng(4);
  const Mesh2D ref = oracle::RandomDyadicMesh(rng, 20, 64, 64);
  Mesh2D tgt = Shifted(ref, {3.25, -1.5});
  const MotionField mf = DenseMotion(ref, tgt, 64, 64);
  for (std::size_t i = 0; i < mf.flow.size(); ++i) {
    EXPECT_TRUE(mf.occlusion[i] == 0.0 || mf.occlusion[i] == 1.0);
    EXPECT_TRUE(mf.flow[i].allFinite());
  }
}

TEST(DenseMotionTest, TopologyMismatchIsRejected) {
  const Mesh2D a = Quad(0, 0, 10, 10, 1);
  const Mesh2D b = Quad(0, 0, 10, 10, 1, Quad(1, 1, 5, 5, 1));
  EXPECT_THROW(DenseMotion(a, b, 16, 16), Error);
}

TEST(DebugDumpTest, Formats) {
  const Mesh2D a = Quad(0, 0, 4, 4, 1);
  const MotionField mf = DenseMotion(a, Shifted(a, {1, 0}), 4, 2);
  EXPECT_EQ(FlowToF32Planes(mf).size(), 4u * 2 * 2 * 4);
  const auto pgm = OcclusionToPgm(mf);
  const std::string header(pgm.begin(), pgm.begin() + 11);
  EXPECT_EQ(header, "P5\n4 2\n255\n");
  EXPECT_EQ(pgm.size(), 11u + 8u);
}

}  // namespace
}  // namespace ihvc
