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

#ifndef IHVC_SEMANTICS_H_
#define IHVC_SEMANTICS_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ihvc {

using Vec3 = std::array<double, 3>;

inline constexpr int kNumJoints = 21;          // body rows 1..21
inline constexpr int kFirstSignaledJoint = 15;  // rows 15..21 are transmitted
inline constexpr int kNumSignaledJoints = 7;
inline constexpr int kNumCoreJoints = 14;
inline constexpr int kShapeDims = 10;

inline constexpr std::size_t kSemanticDims = 31;
inline constexpr std::size_t kKeyDerivedDims = 52;
inline constexpr std::size_t kFullParamDims = 83;

// Offsets of each group inside the flattened 31-vector.
inline constexpr std::size_t kPoseOffset = 0;
inline constexpr std::size_t kTransOffset = 21;
inline constexpr std::size_t kRotOffset = 24;
inline constexpr std::size_t kLocOffset = 27;

// Smallest box extent an Offset edit may saturate to.
inline constexpr double kMinBoxExtent = 1.0 / 512.0;

// Transmitted per-frame semantics. loc is [cx, cy, w_box, h_box] in
// normalized image coordinates.
struct SemanticVector {
  std::array<Vec3, kNumSignaledJoints> pose{};  // joints 15..21
  Vec3 trans{};
  Vec3 rot{};
  std::array<double, 4> loc{};

  std::array<double, kSemanticDims> Flatten() const;
  static SemanticVector FromFlat(const std::array<double, kSemanticDims>& flat);

  // Pose row for body joint 15..21.
  Vec3& Joint(int body_row) { return pose[body_row - kFirstSignaledJoint]; }
  const Vec3& Joint(int body_row) const {
    return pose[body_row - kFirstSignaledJoint];
  }

  friend bool operator==(const SemanticVector&,
                         const SemanticVector&) = default;
};

// Parameters taken from the key-reference frame instead of being signaled.
struct KeyDerivedParams {
  std::array<double, kShapeDims> shape{};
  std::array<Vec3, kNumCoreJoints> body_core{};  // joints 1..14

  std::array<double, kKeyDerivedDims> Flatten() const;

  friend bool operator==(const KeyDerivedParams&,
                         const KeyDerivedParams&) = default;
};

// The complete 83-dimensional parameter set of one frame.
struct FullBodyParams {
  std::array<Vec3, kNumJoints> body{};  // index 0 holds joint 1
  std::array<double, kShapeDims> shape{};
  Vec3 trans{};
  Vec3 rot{};
  std::array<double, 4> loc{};

  Vec3& Joint(int body_row) { return body[body_row - 1]; }
  const Vec3& Joint(int body_row) const { return body[body_row - 1]; }

  // Order: body rows 1..21, shape, trans, rot, loc.
  std::array<double, kFullParamDims> Flatten() const;
  static FullBodyParams FromFlat(
      const std::array<double, kFullParamDims>& flat);

  friend bool operator==(const FullBodyParams&,
                         const FullBodyParams&) = default;
};

// Returns the first violated invariant, or nullopt when sem is valid.
std::optional<std::string> CheckSemantics(const SemanticVector& sem);

// Throws Error(kValidation) naming the first violated invariant.
void Validate(const SemanticVector& sem);
void Validate(const FullBodyParams& full);

std::pair<SemanticVector, KeyDerivedParams> SplitFullParams(
    const FullBodyParams& full);
FullBodyParams MergeParams(const SemanticVector& sem,
                           const KeyDerivedParams& derived);

enum class EditTarget {
  kHeadPose,           // pose rows of joints 15..17, 9 components
  kBodyPose,           // pose rows of joints 18..21, 12 components
  kGlobalRotation,     // rot[0..2]
  kGlobalTranslation,  // trans[0..2]
  kLocation,           // loc[0..3]
};

enum class EditMode { kSet, kOffset };

struct EditCommand {
  EditTarget target = EditTarget::kLocation;
  EditMode mode = EditMode::kOffset;
  std::vector<int> indices;
  std::vector<double> values;

  friend bool operator==(const EditCommand&, const EditCommand&) = default;
};

// Number of addressable components in an edit group.
int EditGroupSize(EditTarget target);
// Position of group component `index` inside the flattened 31-vector.
std::size_t EditFlatIndex(EditTarget target, int index);

const char* EditTargetName(EditTarget target);
std::optional<EditTarget> ParseEditTarget(const std::string& name);
const char* EditModeName(EditMode mode);
std::optional<EditMode> ParseEditMode(const std::string& name);

// Throws Error(kValidation) for malformed commands.
void CheckEditCommand(const EditCommand& cmd);

// Set writes values, Offset adds them. Offsets on loc saturate into [0, 1]
// with the box extents floored at kMinBoxExtent; a Set that leaves the
// vector invalid throws.
SemanticVector ApplyEdit(const SemanticVector& sem, const EditCommand& cmd);

}  // namespace ihvc

#endif  // IHVC_SEMANTICS_H_
