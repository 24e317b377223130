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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "ihvc/body_model.h"
#include "ihvc/error.h"
#include "ihvc/param_codec.h"
#include "ihvc/synth.h"
#include "oracles.h"

namespace ihvc {
namespace {

Image RandomImage(std::mt19937_64& rng, int w, int h) {
  Image img(w, h);
  for (auto& v : img.rgb) v = static_cast<std::uint8_t>(rng());
  return img;
}

MotionField UniformField(int w, int h, Eigen::Vector2d flow, double occ) {
  MotionField mf;
  mf.width = w;
  mf.height = h;
  mf.flow.assign(static_cast<std::size_t>(w) * h, flow);
  mf.occlusion.assign(static_cast<std::size_t>(w) * h, occ);
  return mf;
}

TEST(WarpTest, ZeroFlowFullVisibilityIsIdentity) {
  std::mt19937_64 rng(1);
  const Image ref = RandomImage(rng, 37, 23);
  EXPECT_EQ(Warp(ref, UniformField(37, 23, {0, 0}, 1.0)), ref);
}

TEST(WarpTest, ZeroOcclusionIsBlack) {
  std::mt19937_64 rng(2);
  const Image ref = RandomImage(rng, 16, 16);
  const Image out = Warp(ref, UniformField(16, 16, {1.3, -2.7}, 0.0));
  for (std::uint8_t v : out.rgb) ASSERT_EQ(v, 0);
}

TEST(WarpTest, ShiftMatchesArrayShift) {
  std::mt19937_64 rng(3);
  const Image ref = RandomImage(rng, 40, 12);
  const Image out = Warp(ref, UniformField(40, 12, {-10, 0}, 1.0));
  for (int y = 0; y < 12; ++y) {
    for (int x = 0; x < 40; ++x) {
      const int sx = std::max(x - 10, 0);
      for (int c = 0; c < 3; ++c) {
        ASSERT_EQ(out.at(x, y)[c], ref.at(sx, y)[c]) << x << "," << y;
      }
    }
  }
}

TEST(WarpTest, FractionalFlowIsBilinear) {
  std::mt19937_64 rng(4);
  const Image ref = RandomImage(rng, 9, 7);
  const double fx = 0.25, fy = 0.75;
  const Image out = Warp(ref, UniformField(9, 7, {fx, fy}, 1.0));
  for (int y = 0; y < 6; ++y) {
    for (int x = 0; x < 8; ++x) {
      for (int c = 0; c < 3; ++c) {
        const double v = ref.at(x, y)[c] * (1 - fx) * (1 - fy) +
                         ref.at(x + 1, y)[c] * fx * (1 - fy) +
                         ref.at(x, y + 1)[c] * (1 - fx) * fy +
                         ref.at(x + 1, y + 1)[c] * fx * fy;
        // Dyadic weights: the value is exact, ties land on .5 and round up.
        ASSERT_EQ(out.at(x, y)[c], static_cast<int>(std::floor(v + 0.5)));
      }
    }
  }
}

TEST(WarpTest, SamplesClampToTheBorder) {
  std::mt19937_64 rng(5);
  const Image ref = RandomImage(rng, 8, 8);
  const Image out = Warp(ref, UniformField(8, 8, {100, -100}, 1.0));
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      for (int c = 0; c < 3; ++c) ASSERT_EQ(out.at(x, y)[c], ref.at(7, 0)[c]);
    }
  }
}

TEST(WarpTest, SizeMismatchIsRejected) {
  std::mt19937_64 rng(6);
  EXPECT_THROW(Warp(RandomImage(rng, 8, 8), UniformField(8, 9, {0, 0}, 1)),
               Error);
}

class PipelineTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    SynthOptions opt;
    opt.preset = Preset::kNodHead;
    synth_ = new SynthResult(Synthesize(opt));
  }
  static void TearDownTestSuite() { delete synth_; }

  static SynthResult* synth_;
};

SynthResult* PipelineTest::synth_ = nullptr;

TEST_F(PipelineTest, ConstantSequenceReproducesKey) {
  const FrameSynthesizer fs(synth_->doc.key_full_params, synth_->key);
  const SemanticVector base = SplitFullParams(synth_->doc.key_full_params).first;
  for (int i = 0; i < 3; ++i) EXPECT_EQ(fs.Render(base), synth_->key);
}

TEST_F(PipelineTest, EncodedConstantSequenceReproducesKeyEveryFrame) {
  const FullBodyParams key = synth_->doc.key_full_params;
  const std::vector<SemanticVector> frames(150, SplitFullParams(key).first);
  const auto png = EncodePng(synth_->key);
  const auto cs =
      EncodeSequence(key, png, frames, QuantConfig{}, 384, 384, 30).coded;
  const auto images = ReconstructSequence(Parse(Serialize(cs)));
  ASSERT_EQ(images.size(), 150u);
  for (const Image& img : images) ASSERT_EQ(img, synth_->key);
}

TEST_F(PipelineTest, FullPresetReconstructs150Frames) {
  const auto png = EncodePng(synth_->key);
  const auto cs = EncodeSequence(synth_->doc.key_full_params, png,
                                 synth_->doc.frames, QuantConfig{}, 384, 384, 30)
                      .coded;
  const auto images = ReconstructSequence(cs);
  ASSERT_EQ(images.size(), 150u);
  for (const Image& img : images) {
    EXPECT_EQ(img.width, 384);
    EXPECT_EQ(img.height, 384);
  }
  EXPECT_NE(images[30], synth_->key);
  // Frames are independent of each other and of repetition.
  EXPECT_EQ(ReconstructSequence(cs)[77], images[77]);
}

TEST_F(PipelineTest, KeyImageSizeMustMatchHeader) {
  const auto png = EncodePng(Image(100, 100));
  const auto cs = EncodeSequence(synth_->doc.key_full_params, png, {},
                                 QuantConfig{}, 384, 384, 30)
                      .coded;
  try {
    ReconstructSequence(cs);
    FAIL() << "expected a dimension error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
    EXPECT_STREQ(e.what(), "key frame dimensions mismatch");
  }
}

TEST_F(PipelineTest, LocationEditShiftsCoverageBox) {
  const FrameSynthesizer fs(synth_->doc.key_full_params, synth_->key);
  const SemanticVector sem = synth_->doc.frames[40];
  const SemanticVector moved = ApplyEdit(
      sem, {EditTarget::kLocation, EditMode::kOffset, {0}, {0.1}});
  const auto all = [](int) { return true; };
  const RasterMap ra = Rasterize(fs.ProjectFrame(sem), 384, 384);
  const RasterMap rb = Rasterize(fs.ProjectFrame(moved), 384, 384);
  const auto box_a = oracle::CoverageBox(ra, all);
  const auto box_b = oracle::CoverageBox(rb, all);
  // Every vertex moves 38.4 px, so each pixel-snapped edge moves 38 or 39.
  for (int k : {0, 2}) {
    const int shift = box_b[k] - box_a[k];
    EXPECT_TRUE(shift == 38 || shift == 39) << "edge " << k << ": " << shift;
  }
  EXPECT_EQ(box_b[1], box_a[1]);
  EXPECT_EQ(box_b[3], box_a[3]);

  const Image a = fs.Render(sem);
  const Image b = fs.Render(moved);
  for (int y = 0; y < 384; ++y) {
    for (int x = 0; x < 384; ++x) {
      const bool in_a = x >= box_a[0] && x <= box_a[2] && y >= box_a[1] &&
                        y <= box_a[3];
      const bool in_b = x >= box_b[0] && x <= box_b[2] && y >= box_b[1] &&
                        y <= box_b[3];
      if (in_a || in_b) continue;
      for (int c = 0; c < 3; ++c) {
        ASSERT_EQ(a.at(x, y)[c], b.at(x, y)[c]);
        ASSERT_EQ(a.at(x, y)[c], synth_->key.at(x, y)[c]);
      }
    }
  }
}

TEST_F(PipelineTest, HeadPoseEditStaysInsideHeadCoverage) {
  const FrameSynthesizer fs(synth_->doc.key_full_params, synth_->key);
  const auto& bone = fs.body().rest.bone_of_vertex;
  const auto& faces = fs.body().rest.faces;
  const auto is_head = [&](int f) {
    const int b = bone[faces[f][0]];
    return b == 15 || b == 16 || b == 17;
  };
  for (int frame : {0, 37, 111}) {
    const SemanticVector sem = synth_->doc.frames[frame];
    EditCommand cmd{EditTarget::kHeadPose, EditMode::kOffset, {}, {}};
    for (int i = 0; i < 9; ++i) {
      cmd.indices.push_back(i);
      cmd.values.push_back(0.2 - 0.05 * i);
    }
    const SemanticVector edited = ApplyEdit(sem, cmd);
    const RasterMap ra = Rasterize(fs.ProjectFrame(sem), 384, 384);
    const RasterMap rb = Rasterize(fs.ProjectFrame(edited), 384, 384);
    const Image a = fs.Render(sem);
    const Image b = fs.Render(edited);
    int changed = 0;
    for (int y = 0; y < 384; ++y) {
      for (int x = 0; x < 384; ++x) {
        const std::size_t i = ra.Index(x, y);
        const bool head = (ra.face[i] != kNoFace && is_head(ra.face[i])) ||
                          (rb.face[i] != kNoFace && is_head(rb.face[i]));
        const bool same = std::equal(a.at(x, y), a.at(x, y) + 3, b.at(x, y));
        if (!same) {
          ++changed;
          ASSERT_TRUE(head) << "frame " << frame << " pixel " << x << "," << y;
        }
      }
    }
    EXPECT_GT(changed, 0);
  }
}

TEST_F(PipelineTest, SynthesizerIsDeterministic) {
  const FrameSynthesizer a(synth_->doc.key_full_params, synth_->key);
  const FrameSynthesizer b(synth_->doc.key_full_params, synth_->key);
  EXPECT_EQ(a.Render(synth_->doc.frames[99]), b.Render(synth_->doc.frames[99]));
}

}  // namespace
}  // namespace ihvc
