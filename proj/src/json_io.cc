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

#include "ihvc/json_io.h"

#include <fstream>

#include "ihvc/error.h"

namespace ihvc {
namespace {

[[noreturn]] void Fail(const std::string& message) {
  throw Error(ErrorCode::kValidation, message);
}

const Json& Field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    Fail(std::string("missing field '") + name + "'");
  }
  return j.at(name);
}

double Real(const Json& j, const std::string& where) {
  if (!j.is_number()) Fail(where + " must be a number");
  return j.get<double>();
}

template <std::size_t N>
std::array<double, N> RealArray(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != N) {
    Fail(where + " must be an array of " + std::to_string(N) + " numbers");
  }
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = Real(j[i], where + "[" + std::to_string(i) + "]");
  }
  return out;
}

int Dimension(const Json& j, const char* name) {
  const Json& v = Field(j, name);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1 ||
      v.get<std::int64_t>() > 65535) {
    Fail(std::string(name) + " must be an integer in [1, 65535]");
  }
  return v.get<int>();
}

Json Vec(const Vec3& v) { return Json::array({v[0], v[1], v[2]}); }

}  // namespace

Json ToJson(const SemanticsDocument& doc) {
  Json frames = Json::array();
  for (const SemanticVector& sem : doc.frames) frames.push_back(sem.Flatten());
  return Json{{"width", doc.width},
              {"height", doc.height},
              {"fps", doc.fps},
              {"key_full_params", doc.key_full_params.Flatten()},
              {"frames", std::move(frames)}};
}

SemanticsDocument SemanticsDocumentFromJson(const Json& j) {
  if (!j.is_object()) Fail("semantics document must be a JSON object");
  SemanticsDocument doc;
  doc.width = Dimension(j, "width");
  doc.height = Dimension(j, "height");
  doc.fps = Real(Field(j, "fps"), "fps");
  if (!(doc.fps > 0.0)) Fail("fps must be > 0");
  doc.key_full_params = FullBodyParams::FromFlat(
      RealArray<kFullParamDims>(Field(j, "key_full_params"), "key_full_params"));
  Validate(doc.key_full_params);
  const Json& frames = Field(j, "frames");
  if (!frames.is_array()) Fail("frames must be an array");
  doc.frames.reserve(frames.size());
  for (std::size_t l = 0; l < frames.size(); ++l) {
    const std::string where = "frames[" + std::to_string(l) + "]";
    SemanticVector sem =
        SemanticVector::FromFlat(RealArray<kSemanticDims>(frames[l], where));
    if (auto problem = CheckSemantics(sem)) Fail(where + ": " + *problem);
    doc.frames.push_back(sem);
  }
  return doc;
}

SemanticsDocument LoadSemanticsDocument(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    Fail(path + ": " + e.what());
  }
  return SemanticsDocumentFromJson(j);
}

void SaveSemanticsDocument(const std::string& path,
                           const SemanticsDocument& doc) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << ToJson(doc).dump() << '\n';
}

Json SemanticsToGroupedJson(const SemanticVector& sem) {
  Json pose = Json::array();
  for (const Vec3& row : sem.pose) pose.push_back(Vec(row));
  return Json{{"pose", std::move(pose)},
              {"trans", Vec(sem.trans)},
              {"rot", Vec(sem.rot)},
              {"loc", sem.loc}};
}

Json ToJson(const EditCommand& cmd) {
  return Json{{"target", EditTargetName(cmd.target)},
              {"mode", EditModeName(cmd.mode)},
              {"indices", cmd.indices},
              {"values", cmd.values}};
}

EditCommand EditCommandFromJson(const Json& j) {
  if (!j.is_object()) Fail("command must be an object");
  const Json& target = Field(j, "target");
  const Json& mode = Field(j, "mode");
  if (!target.is_string()) Fail("command.target must be a string");
  if (!mode.is_string()) Fail("command.mode must be a string");
  EditCommand cmd;
  if (auto t = ParseEditTarget(target.get<std::string>())) {
    cmd.target = *t;
  } else {
    Fail("unknown edit target '" + target.get<std::string>() + "'");
  }
  if (auto m = ParseEditMode(mode.get<std::string>())) {
    cmd.mode = *m;
  } else {
    Fail("unknown edit mode '" + mode.get<std::string>() + "'");
  }
  const Json& indices = Field(j, "indices");
  const Json& values = Field(j, "values");
  if (!indices.is_array() || !values.is_array()) {
    Fail("command.indices and command.values must be arrays");
  }
  for (const Json& i : indices) {
    if (!i.is_number_integer()) Fail("command.indices must be integers");
    cmd.indices.push_back(i.get<int>());
  }
  for (const Json& v : values) cmd.values.push_back(Real(v, "command.values"));
  CheckEditCommand(cmd);
  return cmd;
}

std::vector<ScheduledEdit> EditScriptFromJson(const Json& j) {
  if (!j.is_array()) Fail("edit script must be a JSON array");
  std::vector<ScheduledEdit> script;
  for (const Json& entry : j) {
    const Json& frames = Field(entry, "frames");
    if (!frames.is_array() || frames.size() != 2 ||
        !frames[0].is_number_unsigned() || !frames[1].is_number_unsigned()) {
      Fail("frames must be [first, last] with non-negative integers");
    }
    ScheduledEdit edit;
    edit.first = frames[0].get<std::uint32_t>();
    edit.last = frames[1].get<std::uint32_t>();
    if (edit.first > edit.last) Fail("frames range is reversed");
    edit.command = EditCommandFromJson(Field(entry, "command"));
    script.push_back(std::move(edit));
  }
  return script;
}

std::vector<SemanticVector> ApplyEditScript(
    std::span<const SemanticVector> frames,
    std::span<const ScheduledEdit> script) {
  std::vector<SemanticVector> out(frames.begin(), frames.end());
  for (const ScheduledEdit& edit : script) {
    if (edit.last >= out.size()) {
      Fail("edit range [" + std::to_string(edit.first) + ", " +
           std::to_string(edit.last) + "] exceeds frame count " +
           std::to_string(out.size()));
    }
    for (std::uint32_t l = edit.first; l <= edit.last; ++l) {
      out[l] = ApplyEdit(out[l], edit.command);
    }
  }
  return out;
}

Json ToJson(const QuantConfig& cfg) {
  return Json{{"step_pose", cfg.step_pose},
              {"step_trans", cfg.step_trans},
              {"step_rot", cfg.step_rot},
              {"step_loc", cfg.step_loc}};
}

Json TemplateToJson(const BodyTemplate& tmpl) {
  Json joints = Json::array();
  for (int i = 0; i < kNumNodes; ++i) {
    const Eigen::Vector3d& off = tmpl.skeleton.rest_offset[i];
    joints.push_back({{"index", i},
                      {"name", SkeletonTemplate::JointNames()[i]},
                      {"parent", tmpl.skeleton.parent[i]},
                      {"rest_offset", {off.x(), off.y(), off.z()}}});
  }
  Json segments = Json::array();
  for (const Segment& s : tmpl.segments) {
    segments.push_back({{"node", s.node},
                        {"bind_node", s.bind_node},
                        {"leaf_extension", s.leaf_extension},
                        {"part", BodyPartName(s.part)},
                        {"radius", s.radius},
                        {"start", {s.start.x(), s.start.y(), s.start.z()}},
                        {"end", {s.end.x(), s.end.y(), s.end.z()}}});
  }
  return Json{{"coordinate_frame",
               "x: subject left, y: down (feet +1, head -1), z: away from "
               "viewer"},
              {"joints", std::move(joints)},
              {"length_blend", LengthBlendTable()},
              {"radius_blend", RadiusBlendTable()},
              {"segments", std::move(segments)},
              {"ring_vertices", kRingVertices},
              {"vertex_count", tmpl.rest.vertices.size()},
              {"face_count", tmpl.rest.faces.size()}};
}

}  // namespace ihvc
