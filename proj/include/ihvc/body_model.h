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

#ifndef IHVC_BODY_MODEL_H_
#define IHVC_BODY_MODEL_H_

#include <array>
#include <string>
#include <vector>

#include <Eigen/Geometry>

#include "ihvc/semantics.h"

namespace ihvc {

// Model frame: x to the subject's left, y down (feet at +1, head at -1),
// z away from the viewer. Depth grows with z.
inline constexpr int kNumNodes = 22;
inline constexpr int kRingVertices = 8;
inline constexpr int kVerticesPerSegment = 2 * kRingVertices + 2;  // 18
inline constexpr int kFacesPerSegment = 4 * kRingVertices;         // 32
inline constexpr int kNumSegments = 27;  // 21 bones + 6 leaf extensions
inline constexpr int kTemplateVertices = kNumSegments * kVerticesPerSegment;
inline constexpr int kTemplateFaces = kNumSegments * kFacesPerSegment;

enum class BodyPart { kTorso, kLeg, kArm, kHead, kHand };

struct SkeletonTemplate {
  std::array<int, kNumNodes> parent{};
  std::array<Eigen::Vector3d, kNumNodes> rest_offset{};

  static const std::array<const char*, kNumNodes>& JointNames();
};

// A capsule-like tube from `start` to `end` (rest pose, model frame),
// rigidly bound to node `bind_node`.
struct Segment {
  int node = 0;       // joint whose offset this bone spans, or the leaf
  int bind_node = 0;  // skinning bone
  bool leaf_extension = false;
  BodyPart part = BodyPart::kTorso;
  double radius = 0.0;
  Eigen::Vector3d start = Eigen::Vector3d::Zero();
  Eigen::Vector3d end = Eigen::Vector3d::Zero();
};

using Face = std::array<int, 3>;

struct BodyMesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<Face> faces;
  std::vector<int> bone_of_vertex;
};

struct Mesh2D {
  std::vector<Eigen::Vector2d> points;  // pixels
  std::vector<double> depth;
  std::vector<Face> faces;
};

struct BodyTemplate {
  SkeletonTemplate skeleton;
  std::vector<Segment> segments;
  BodyMesh rest;
  // rest.vertices[i] - rest_position[bone], i.e. coordinates in the bone's
  // rest frame.
  std::vector<Eigen::Vector3d> bind_vertices;
  std::array<Eigen::Vector3d, kNumNodes> rest_position{};  // world, rest pose
};

// Fixed tables. Rows are nodes 0..21.
const std::array<Eigen::Vector3d, kNumNodes>& RestOffsetTable();
const std::array<int, kNumNodes>& ParentTable();
// Length blend matrix; m_b = 1 + (B * shape)_b.
const std::array<std::array<double, kShapeDims>, kNumNodes>& LengthBlendTable();
// Radius blend matrix; r_b = 1 + (R * shape)_b, applied to the radius of the
// segment spanning node b (and to the leaf extension of node b).
const std::array<std::array<double, kShapeDims>, kNumNodes>& RadiusBlendTable();

// Throws Error(kDegenerateShape) if any multiplier is <= 0.05.
BodyTemplate BuildTemplate(const std::array<double, kShapeDims>& shape);

using RigidTransform = Eigen::Isometry3d;

// Rodrigues rotation of an axis-angle vector; zero maps to identity.
Eigen::Matrix3d AxisAngleToMatrix(const Vec3& axis_angle);

std::array<RigidTransform, kNumNodes> ForwardKinematics(
    const FullBodyParams& full, const SkeletonTemplate& skeleton);

BodyMesh PoseMesh(const FullBodyParams& full, const BodyTemplate& tmpl);
BodyMesh PoseMesh(const std::array<RigidTransform, kNumNodes>& world,
                  const BodyTemplate& tmpl);

// Orthographic mapping into pixels:
//   u = (cx + 0.5 w_box x) * width,  v = (cy + 0.5 h_box y) * height.
Mesh2D Project(const BodyMesh& mesh, const std::array<double, 4>& loc,
               int width, int height);

// Wavefront OBJ text (v and f lines, 1-based).
std::string ToObj(const BodyMesh& mesh);

const char* BodyPartName(BodyPart part);

}  // namespace ihvc

#endif  // IHVC_BODY_MODEL_H_
