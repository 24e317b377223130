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

#include "ihvc/semantics.h"

#include <algorithm>
#include <cmath>

#include "ihvc/error.h"

namespace ihvc {

std::array<double, kSemanticDims> SemanticVector::Flatten() const {
  std::array<double, kSemanticDims> flat{};
  std::size_t k = 0;
  for (const Vec3& row : pose) {
    for (double v : row) flat[k++] = v;
  }
  for (double v : trans) flat[k++] = v;
  for (double v : rot) flat[k++] = v;
  for (double v : loc) flat[k++] = v;
  return flat;
}

SemanticVector SemanticVector::FromFlat(
    const std::array<double, kSemanticDims>& flat) {
  SemanticVector sem;
  std::size_t k = 0;
  for (Vec3& row : sem.pose) {
    for (double& v : row) v = flat[k++];
  }
  for (double& v : sem.trans) v = flat[k++];
  for (double& v : sem.rot) v = flat[k++];
  for (double& v : sem.loc) v = flat[k++];
  return sem;
}

std::array<double, kKeyDerivedDims> KeyDerivedParams::Flatten() const {
  std::array<double, kKeyDerivedDims> flat{};
  std::size_t k = 0;
  for (double v : shape) flat[k++] = v;
  for (const Vec3& row : body_core) {
    for (double v : row) flat[k++] = v;
  }
  return flat;
}

std::array<double, kFullParamDims> FullBodyParams::Flatten() const {
  std::array<double, kFullParamDims> flat{};
  std::size_t k = 0;
  for (const Vec3& row : body) {
    for (double v : row) flat[k++] = v;
  }
  for (double v : shape) flat[k++] = v;
  for (double v : trans) flat[k++] = v;
  for (double v : rot) flat[k++] = v;
  for (double v : loc) flat[k++] = v;
  return flat;
}

FullBodyParams FullBodyParams::FromFlat(
    const std::array<double, kFullParamDims>& flat) {
  FullBodyParams full;
  std::size_t k = 0;
  for (Vec3& row : full.body) {
    for (double& v : row) v = flat[k++];
  }
  for (double& v : full.shape) v = flat[k++];
  for (double& v : full.trans) v = flat[k++];
  for (double& v : full.rot) v = flat[k++];
  for (double& v : full.loc) v = flat[k++];
  return full;
}

namespace {

constexpr const char* kLocNames[4] = {"loc.cx", "loc.cy", "loc.w_box",
                                      "loc.h_box"};

std::optional<std::string> CheckLoc(const std::array<double, 4>& loc) {
  for (int i = 0; i < 4; ++i) {
    if (loc[i] < 0.0 || loc[i] > 1.0) {
      return std::string(kLocNames[i]) + " must lie in [0, 1]";
    }
  }
  if (loc[2] <= 0.0) return std::string("loc.w_box must be > 0");
  if (loc[3] <= 0.0) return std::string("loc.h_box must be > 0");
  return std::nullopt;
}

}  // namespace

std::optional<std::string> CheckSemantics(const SemanticVector& sem) {
  const auto flat = sem.Flatten();
  for (std::size_t i = 0; i < flat.size(); ++i) {
    if (!std::isfinite(flat[i])) {
      return "component " + std::to_string(i) + " is not finite";
    }
  }
  return CheckLoc(sem.loc);
}

void Validate(const SemanticVector& sem) {
  if (auto problem = CheckSemantics(sem)) {
    throw Error(ErrorCode::kValidation, *problem);
  }
}

void Validate(const FullBodyParams& full) {
  const auto flat = full.Flatten();
  for (std::size_t i = 0; i < flat.size(); ++i) {
    if (!std::isfinite(flat[i])) {
      throw Error(ErrorCode::kValidation,
                  "key param " + std::to_string(i) + " is not finite");
    }
  }
  if (auto problem = CheckLoc(full.loc)) {
    throw Error(ErrorCode::kValidation, *problem);
  }
}

std::pair<SemanticVector, KeyDerivedParams> SplitFullParams(
    const FullBodyParams& full) {
  const auto flat = full.Flatten();
  for (std::size_t i = 0; i < flat.size(); ++i) {
    if (!std::isfinite(flat[i])) {
      throw Error(ErrorCode::kValidation,
                  "full param " + std::to_string(i) + " is not finite");
    }
  }
  SemanticVector sem;
  KeyDerivedParams derived;
  for (int j = 0; j < kNumSignaledJoints; ++j) {
    sem.pose[j] = full.Joint(kFirstSignaledJoint + j);
  }
  sem.trans = full.trans;
  sem.rot = full.rot;
  sem.loc = full.loc;
  derived.shape = full.shape;
  for (int j = 0; j < kNumCoreJoints; ++j) {
    derived.body_core[j] = full.Joint(1 + j);
  }
  return {sem, derived};
}

FullBodyParams MergeParams(const SemanticVector& sem,
                           const KeyDerivedParams& derived) {
  FullBodyParams full;
  for (int j = 0; j < kNumCoreJoints; ++j) {
    full.Joint(1 + j) = derived.body_core[j];
  }
  for (int j = 0; j < kNumSignaledJoints; ++j) {
    full.Joint(kFirstSignaledJoint + j) = sem.pose[j];
  }
  full.shape = derived.shape;
  full.trans = sem.trans;
  full.rot = sem.rot;
  full.loc = sem.loc;
  return full;
}

int EditGroupSize(EditTarget target) {
  switch (target) {
    case EditTarget::kHeadPose: return 9;
    case EditTarget::kBodyPose: return 12;
    case EditTarget::kGlobalRotation: return 3;
    case EditTarget::kGlobalTranslation: return 3;
    case EditTarget::kLocation: return 4;
  }
  return 0;
}

std::size_t EditFlatIndex(EditTarget target, int index) {
  switch (target) {
    case EditTarget::kHeadPose: return kPoseOffset + index;
    case EditTarget::kBodyPose: return kPoseOffset + 9 + index;
    case EditTarget::kGlobalRotation: return kRotOffset + index;
    case EditTarget::kGlobalTranslation: return kTransOffset + index;
    case EditTarget::kLocation: return kLocOffset + index;
  }
  return 0;
}

const char* EditTargetName(EditTarget target) {
  switch (target) {
    case EditTarget::kHeadPose: return "HeadPose";
    case EditTarget::kBodyPose: return "BodyPose";
    case EditTarget::kGlobalRotation: return "GlobalRotation";
    case EditTarget::kGlobalTranslation: return "GlobalTranslation";
    case EditTarget::kLocation: return "Location";
  }
  return "?";
}

std::optional<EditTarget> ParseEditTarget(const std::string& name) {
  for (EditTarget t :
       {EditTarget::kHeadPose, EditTarget::kBodyPose,
        EditTarget::kGlobalRotation, EditTarget::kGlobalTranslation,
        EditTarget::kLocation}) {
    if (name == EditTargetName(t)) return t;
  }
  return std::nullopt;
}

const char* EditModeName(EditMode mode) {
  return mode == EditMode::kSet ? "Set" : "Offset";
}

std::optional<EditMode> ParseEditMode(const std::string& name) {
  if (name == "Set") return EditMode::kSet;
  if (name == "Offset") return EditMode::kOffset;
  return std::nullopt;
}

void CheckEditCommand(const EditCommand& cmd) {
  if (cmd.indices.size() != cmd.values.size()) {
    throw Error(ErrorCode::kValidation,
                "edit indices and values differ in length");
  }
  const int size = EditGroupSize(cmd.target);
  for (int index : cmd.indices) {
    if (index < 0 || index >= size) {
      throw Error(ErrorCode::kValidation,
                  "edit index " + std::to_string(index) + " out of range for " +
                      EditTargetName(cmd.target) + " (size " +
                      std::to_string(size) + ")");
    }
  }
  for (std::size_t i = 0; i < cmd.values.size(); ++i) {
    if (!std::isfinite(cmd.values[i])) {
      throw Error(ErrorCode::kValidation,
                  "edit value " + std::to_string(i) + " is not finite");
    }
  }
}

SemanticVector ApplyEdit(const SemanticVector& sem, const EditCommand& cmd) {
  CheckEditCommand(cmd);
  auto flat = sem.Flatten();
  for (std::size_t i = 0; i < cmd.indices.size(); ++i) {
    const std::size_t k = EditFlatIndex(cmd.target, cmd.indices[i]);
    if (cmd.mode == EditMode::kSet) {
      flat[k] = cmd.values[i];
    } else {
      flat[k] += cmd.values[i];
    }
  }
  if (cmd.target == EditTarget::kLocation && cmd.mode == EditMode::kOffset) {
    for (int index : cmd.indices) {
      const std::size_t k = kLocOffset + index;
      const double floor = index >= 2 ? kMinBoxExtent : 0.0;
      flat[k] = std::clamp(flat[k], floor, 1.0);
    }
  }
  SemanticVector out = SemanticVector::FromFlat(flat);
  Validate(out);
  return out;
}

}  // namespace ihvc
