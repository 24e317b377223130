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

#include "golden.h"

#include <gtest/gtest.h>

#include "ihvc/image.h"

namespace ihvc {
namespace {

using testing::GoldenCase;
using testing::LoadGolden;

class GoldenTest : public ::testing::TestWithParam<std::string> {};

TEST_P(GoldenTest, DecodesToRecordedSemantics) {
  const GoldenCase g = LoadGolden(GetParam());
  const DecodedSemantics dec = DecodeSequence(Parse(g.stream));
  EXPECT_EQ(dec.header.width, g.decoded.width);
  EXPECT_EQ(dec.header.height, g.decoded.height);
  EXPECT_EQ(dec.header.fps(), g.decoded.fps);
  EXPECT_EQ(dec.key_params, g.decoded.key_full_params);
  EXPECT_EQ(dec.key_payload, g.key_png);
  ASSERT_EQ(dec.frames.size(), g.decoded.frames.size());
  for (std::size_t l = 0; l < dec.frames.size(); ++l) {
    EXPECT_EQ(dec.frames[l], g.decoded.frames[l]) << "frame " << l;
  }
}

TEST_P(GoldenTest, ReencodeIsByteIdentical) {
  const GoldenCase g = LoadGolden(GetParam());
  const auto coded =
      EncodeSequence(g.source.key_full_params, g.key_png, g.source.frames,
                     testing::GoldenSteps(g), g.source.width, g.source.height,
                     g.source.fps)
          .coded;
  EXPECT_EQ(Serialize(coded), g.stream);
}

TEST_P(GoldenTest, ReconstructionMatchesRecordedHashes) {
  const GoldenCase g = LoadGolden(GetParam());
  const auto images = ReconstructSequence(Parse(g.stream));
  ASSERT_EQ(images.size(), g.pixel_hashes.size());
  for (std::size_t l = 0; l < images.size(); ++l) {
    EXPECT_EQ(PixelHash(images[l]), g.pixel_hashes[l]) << "frame " << l;
  }
}

TEST_P(GoldenTest, HeaderFields) {
  const GoldenCase g = LoadGolden(GetParam());
  ASSERT_GE(g.stream.size(), kFixedHeaderBytes);
  EXPECT_EQ(std::string(g.stream.begin(), g.stream.begin() + 4), "IHVC");
  EXPECT_EQ(g.stream[4], kVersion);
  const CodedSequence cs = Parse(g.stream);
  EXPECT_EQ(cs.header.frame_count, g.source.frames.size());
  EXPECT_EQ(cs.header.steps, testing::GoldenSteps(g).Representable());
}

INSTANTIATE_TEST_SUITE_P(All, GoldenTest,
                         ::testing::ValuesIn(testing::GoldenNames()));

}  // namespace
}  // namespace ihvc
