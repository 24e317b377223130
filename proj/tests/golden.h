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

// Checked-in reference streams under golden/. See tools/make_golden.sh.

#ifndef IHVC_TESTS_GOLDEN_H_
#define IHVC_TESTS_GOLDEN_H_

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "ihvc/bitstream.h"
#include "ihvc/json_io.h"
#include "ihvc/param_codec.h"
#include "ihvc/warp_gen.h"
#include "test_util.h"

namespace ihvc::testing {

inline const std::vector<std::string>& GoldenNames() {
  static const std::vector<std::string> names = {
      "nod_head_384", "wave_arms_coarse", "random_smooth_small"};
  return names;
}

struct GoldenCase {
  std::string name;
  std::filesystem::path dir;
  std::vector<std::uint8_t> stream;
  std::vector<std::uint8_t> key_png;
  SemanticsDocument source;
  SemanticsDocument decoded;
  std::vector<std::string> pixel_hashes;
  std::string steps;
};

inline GoldenCase LoadGolden(const std::string& name) {
  GoldenCase g;
  g.name = name;
  g.dir = std::filesystem::path(SourceDir()) / "golden" / name;
  g.stream = ReadFileBytes((g.dir / "stream.ihvc").string());
  g.key_png = ReadFileBytes((g.dir / "key.png").string());
  g.source = LoadSemanticsDocument((g.dir / "semantics.json").string());
  g.decoded = LoadSemanticsDocument((g.dir / "decoded.json").string());
  std::ifstream render(g.dir / "render.json");
  const Json report = Json::parse(render);
  for (const Json& h : report.at("pixel_sha256")) {
    g.pixel_hashes.push_back(h.get<std::string>());
  }
  std::ifstream steps(g.dir / "steps.txt");
  std::getline(steps, g.steps);
  return g;
}

inline QuantConfig GoldenSteps(const GoldenCase& g) {
  std::vector<double> v;
  std::size_t pos = 0;
  while (pos <= g.steps.size()) {
    const std::size_t comma = std::min(g.steps.find(',', pos), g.steps.size());
    v.push_back(std::stod(g.steps.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  QuantConfig cfg;
  cfg.step_pose = v.at(0);
  cfg.step_trans = v.at(1);
  cfg.step_rot = v.at(2);
  cfg.step_loc = v.at(3);
  return cfg;
}

}  // namespace ihvc::testing

#endif  // IHVC_TESTS_GOLDEN_H_
