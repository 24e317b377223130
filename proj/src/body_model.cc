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

#include "ihvc/body_model.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ihvc/error.h"

namespace ihvc {
namespace {

using Eigen::Vector3d;

constexpr double kMinMultiplier = 0.05;

struct BoneSpec {
  int parent;
  double offset[3];
  double radius;
  BodyPart part;
};

// T-pose, arms along +-x, unit-normalized height.
constexpr BoneSpec kBones[kNumNodes] = {
    {-1, {0.0, 0.0, 0.0}, 0.0, BodyPart::kTorso},     // 0 pelvis
    {0, {0.10, 0.06, 0.0}, 0.07, BodyPart::kTorso},   // 1 l_hip
    {0, {-0.10, 0.06, 0.0}, 0.07, BodyPart::kTorso},  // 2 r_hip
    {0, {0.0, -0.12, 0.0}, 0.11, BodyPart::kTorso},   // 3 spine
    {1, {0.0, 0.42, 0.0}, 0.075, BodyPart::kLeg},     // 4 l_knee
    {2, {0.0, 0.42, 0.0}, 0.075, BodyPart::kLeg},     // 5 r_knee
    {3, {0.0, -0.24, 0.0}, 0.13, BodyPart::kTorso},   // 6 chest
    {4, {0.0, 0.42, 0.0}, 0.055, BodyPart::kLeg},     // 7 l_ankle
    {5, {0.0, 0.42, 0.0}, 0.055, BodyPart::kLeg},     // 8 r_ankle
    {6, {0.06, -0.12, 0.0}, 0.05, BodyPart::kTorso},  // 9 l_collar
    {6, {-0.06, -0.12, 0.0}, 0.05, BodyPart::kTorso}, // 10 r_collar
    {9, {0.12, 0.0, 0.0}, 0.05, BodyPart::kTorso},    // 11 l_shoulder
    {10, {-0.12, 0.0, 0.0}, 0.05, BodyPart::kTorso},  // 12 r_shoulder
    {11, {0.26, 0.0, 0.0}, 0.045, BodyPart::kArm},    // 13 l_elbow
    {12, {-0.26, 0.0, 0.0}, 0.045, BodyPart::kArm},   // 14 r_elbow
    {6, {0.0, -0.16, 0.0}, 0.06, BodyPart::kTorso},   // 15 neck
    {15, {0.0, -0.12, 0.0}, 0.05, BodyPart::kHead},   // 16 head
    {16, {0.0, 0.06, -0.07}, 0.04, BodyPart::kHead},  // 17 jaw
    {13, {0.24, 0.0, 0.0}, 0.04, BodyPart::kArm},     // 18 l_wrist
    {14, {-0.24, 0.0, 0.0}, 0.04, BodyPart::kArm},    // 19 r_wrist
    {18, {0.08, 0.0, 0.0}, 0.035, BodyPart::kHand},   // 20 l_hand
    {19, {-0.08, 0.0, 0.0}, 0.035, BodyPart::kHand},  // 21 r_hand
};

struct LeafSpec {
  int node;
  double extent[3];
  double radius;
  BodyPart part;
};

// Geometry past the leaf joints: feet, skull, chin, fingers.
constexpr LeafSpec kLeaves[] = {
    {7, {0.0, 0.08, -0.10}, 0.045, BodyPart::kLeg},
    {8, {0.0, 0.08, -0.10}, 0.045, BodyPart::kLeg},
    {16, {0.0, -0.30, 0.0}, 0.11, BodyPart::kHead},
    {17, {0.0, 0.02, -0.03}, 0.035, BodyPart::kHead},
    {20, {0.08, 0.0, 0.0}, 0.03, BodyPart::kHand},
    {21, {-0.08, 0.0, 0.0}, 0.03, BodyPart::kHand},
};
static_assert(kNumNodes - 1 + std::size(kLeaves) == kNumSegments);

constexpr const char* kJointNames[kNumNodes] = {
    "pelvis",     "l_hip",      "r_hip",   "spine",   "l_knee",  "r_knee",
    "chest",      "l_ankle",    "r_ankle", "l_collar", "r_collar",
    "l_shoulder", "r_shoulder", "l_elbow", "r_elbow", "neck",    "head",
    "jaw",        "l_wrist",    "r_wrist", "l_hand",  "r_hand"};

// Shape columns: 0 all bones, 1 legs, 2 arms, 3 spine, 4 neck/head,
// 5 hands, 6 hip width, 7 shoulder width, 8 all radii, 9 torso radii.
std::array<std::array<double, kShapeDims>, kNumNodes> MakeLengthBlend() {
  std::array<std::array<double, kShapeDims>, kNumNodes> b{};
  for (auto& row : b) row[0] = 1.0;
  for (int n : {4, 5, 7, 8}) b[n][1] = 1.0;
  for (int n : {13, 14, 18, 19}) b[n][2] = 1.0;
  for (int n : {3, 6}) b[n][3] = 1.0;
  for (int n : {15, 16, 17}) b[n][4] = 1.0;
  for (int n : {20, 21}) b[n][5] = 1.0;
  for (int n : {1, 2}) b[n][6] = 1.0;
  for (int n : {9, 10, 11, 12}) b[n][7] = 1.0;
  return b;
}

std::array<std::array<double, kShapeDims>, kNumNodes> MakeRadiusBlend() {
  std::array<std::array<double, kShapeDims>, kNumNodes> r{};
  for (auto& row : r) row[8] = 1.0;
  for (int n : {1, 2, 3, 6, 9, 10, 11, 12, 15}) r[n][9] = 1.0;
  return r;
}

double Blend(const std::array<double, kShapeDims>& row,
             const std::array<double, kShapeDims>& shape) {
  double acc = 1.0;
  for (int k = 0; k < kShapeDims; ++k) acc += row[k] * shape[k];
  return acc;
}

void AppendSegment(const Segment& seg, int segment_index, BodyTemplate& tmpl) {
  BodyMesh& mesh = tmpl.rest;
  const Vector3d axis = seg.end - seg.start;
  const Vector3d dir = axis.normalized();
  int helper = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(dir[i]) < std::abs(dir[helper])) helper = i;
  }
  const Vector3d u = dir.cross(Vector3d::Unit(helper)).normalized();
  const Vector3d v = dir.cross(u);

  // Segments start at their bind joint, so local coordinates are relative
  // to seg.start.
  const int base = segment_index * kVerticesPerSegment;
  std::vector<Vector3d> local;
  local.push_back(Vector3d::Zero());
  for (double t : {0.25, 0.75}) {
    for (int k = 0; k < kRingVertices; ++k) {
      const double theta = 2.0 * std::numbers::pi * k / kRingVertices;
      local.push_back(t * axis + seg.radius * (std::cos(theta) * u +
                                               std::sin(theta) * v));
    }
  }
  local.push_back(axis);
  for (const Vector3d& p : local) {
    tmpl.bind_vertices.push_back(p);
    mesh.vertices.push_back(p + seg.start);
  }
  for (int k = 0; k < kVerticesPerSegment; ++k) {
    mesh.bone_of_vertex.push_back(seg.bind_node);
  }

  const int ring_a = base + 1;
  const int ring_b = base + 1 + kRingVertices;
  const int tip = base + kVerticesPerSegment - 1;
  for (int k = 0; k < kRingVertices; ++k) {
    const int next = (k + 1) % kRingVertices;
    mesh.faces.push_back({base, ring_a + next, ring_a + k});
  }
  for (int k = 0; k < kRingVertices; ++k) {
    const int next = (k + 1) % kRingVertices;
    mesh.faces.push_back({ring_a + k, ring_a + next, ring_b + k});
    mesh.faces.push_back({ring_a + next, ring_b + next, ring_b + k});
  }
  for (int k = 0; k < kRingVertices; ++k) {
    const int next = (k + 1) % kRingVertices;
    mesh.faces.push_back({ring_b + k, ring_b + next, tip});
  }
}

}  // namespace

const std::array<const char*, kNumNodes>& SkeletonTemplate::JointNames() {
  static const std::array<const char*, kNumNodes> names = [] {
    std::array<const char*, kNumNodes> out{};
    for (int i = 0; i < kNumNodes; ++i) out[i] = kJointNames[i];
    return out;
  }();
  return names;
}

const std::array<Vector3d, kNumNodes>& RestOffsetTable() {
  static const std::array<Vector3d, kNumNodes> table = [] {
    std::array<Vector3d, kNumNodes> out{};
    for (int i = 0; i < kNumNodes; ++i) {
      out[i] = Vector3d(kBones[i].offset[0], kBones[i].offset[1],
                        kBones[i].offset[2]);
    }
    return out;
  }();
  return table;
}

const std::array<int, kNumNodes>& ParentTable() {
  static const std::array<int, kNumNodes> table = [] {
    std::array<int, kNumNodes> out{};
    for (int i = 0; i < kNumNodes; ++i) out[i] = kBones[i].parent;
    return out;
  }();
  return table;
}

const std::array<std::array<double, kShapeDims>, kNumNodes>&
LengthBlendTable() {
  static const auto table = MakeLengthBlend();
  return table;
}

const std::array<std::array<double, kShapeDims>, kNumNodes>&
RadiusBlendTable() {
  static const auto table = MakeRadiusBlend();
  return table;
}

BodyTemplate BuildTemplate(const std::array<double, kShapeDims>& shape) {
  for (int k = 0; k < kShapeDims; ++k) {
    if (!std::isfinite(shape[k])) {
      throw Error(ErrorCode::kValidation,
                  "shape[" + std::to_string(k) + "] is not finite");
    }
  }
  std::array<double, kNumNodes> length_mult{};
  std::array<double, kNumNodes> radius_mult{};
  for (int b = 0; b < kNumNodes; ++b) {
    length_mult[b] = Blend(LengthBlendTable()[b], shape);
    radius_mult[b] = Blend(RadiusBlendTable()[b], shape);
    if (length_mult[b] <= kMinMultiplier || radius_mult[b] <= kMinMultiplier) {
      throw Error(ErrorCode::kDegenerateShape,
                  "degenerate shape at bone " + std::to_string(b));
    }
  }

  BodyTemplate tmpl;
  tmpl.skeleton.parent = ParentTable();
  for (int b = 0; b < kNumNodes; ++b) {
    tmpl.skeleton.rest_offset[b] = RestOffsetTable()[b] * length_mult[b];
  }
  tmpl.rest_position[0] = tmpl.skeleton.rest_offset[0];
  for (int b = 1; b < kNumNodes; ++b) {
    tmpl.rest_position[b] = tmpl.rest_position[tmpl.skeleton.parent[b]] +
                            tmpl.skeleton.rest_offset[b];
  }

  for (int b = 1; b < kNumNodes; ++b) {
    Segment seg;
    seg.node = b;
    seg.bind_node = kBones[b].parent;
    seg.part = kBones[b].part;
    seg.radius = kBones[b].radius * radius_mult[b];
    seg.start = tmpl.rest_position[seg.bind_node];
    seg.end = tmpl.rest_position[b];
    tmpl.segments.push_back(seg);
  }
  for (const LeafSpec& leaf : kLeaves) {
    Segment seg;
    seg.node = leaf.node;
    seg.bind_node = leaf.node;
    seg.leaf_extension = true;
    seg.part = leaf.part;
    seg.radius = leaf.radius * radius_mult[leaf.node];
    seg.start = tmpl.rest_position[leaf.node];
    seg.end = seg.start + length_mult[leaf.node] *
                              Vector3d(leaf.extent[0], leaf.extent[1],
                                       leaf.extent[2]);
    tmpl.segments.push_back(seg);
  }

  tmpl.rest.vertices.reserve(kTemplateVertices);
  tmpl.rest.faces.reserve(kTemplateFaces);
  tmpl.rest.bone_of_vertex.reserve(kTemplateVertices);
  tmpl.bind_vertices.reserve(kTemplateVertices);
  for (int s = 0; s < kNumSegments; ++s) {
    AppendSegment(tmpl.segments[s], s, tmpl);
  }
  return tmpl;
}

Eigen::Matrix3d AxisAngleToMatrix(const Vec3& axis_angle) {
  const Vector3d v(axis_angle[0], axis_angle[1], axis_angle[2]);
  const double angle = v.norm();
  if (angle == 0.0) return Eigen::Matrix3d::Identity();
  return Eigen::AngleAxisd(angle, v / angle).toRotationMatrix();
}

std::array<RigidTransform, kNumNodes> ForwardKinematics(
    const FullBodyParams& full, const SkeletonTemplate& skeleton) {
  std::array<RigidTransform, kNumNodes> world;
  world[0].setIdentity();
  world[0].linear() = AxisAngleToMatrix(full.rot);
  world[0].translation() =
      Vector3d(full.trans[0], full.trans[1], full.trans[2]) +
      world[0].linear() * skeleton.rest_offset[0];
  for (int i = 1; i < kNumNodes; ++i) {
    RigidTransform local = RigidTransform::Identity();
    local.linear() = AxisAngleToMatrix(full.Joint(i));
    local.translation() = skeleton.rest_offset[i];
    world[i] = world[skeleton.parent[i]] * local;
  }
  return world;
}

BodyMesh PoseMesh(const std::array<RigidTransform, kNumNodes>& world,
                  const BodyTemplate& tmpl) {
  BodyMesh posed;
  posed.faces = tmpl.rest.faces;
  posed.bone_of_vertex = tmpl.rest.bone_of_vertex;
  posed.vertices.resize(tmpl.rest.vertices.size());
  for (std::size_t i = 0; i < tmpl.rest.vertices.size(); ++i) {
    const int bone = tmpl.rest.bone_of_vertex[i];
    posed.vertices[i] = world[bone] * tmpl.bind_vertices[i];
  }
  return posed;
}

BodyMesh PoseMesh(const FullBodyParams& full, const BodyTemplate& tmpl) {
  return PoseMesh(ForwardKinematics(full, tmpl.skeleton), tmpl);
}

Mesh2D Project(const BodyMesh& mesh, const std::array<double, 4>& loc,
               int width, int height) {
  Mesh2D out;
  out.faces = mesh.faces;
  out.points.reserve(mesh.vertices.size());
  out.depth.reserve(mesh.vertices.size());
  for (const Vector3d& p : mesh.vertices) {
    out.points.emplace_back((loc[0] + 0.5 * loc[2] * p.x()) * width,
                            (loc[1] + 0.5 * loc[3] * p.y()) * height);
    out.depth.push_back(p.z());
  }
  return out;
}

std::string ToObj(const BodyMesh& mesh) {
  std::ostringstream os;
  os.precision(9);
  for (const Vector3d& v : mesh.vertices) {
    os << "v " << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  }
  for (const Face& f : mesh.faces) {
    os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  }
  return os.str();
}

const char* BodyPartName(BodyPart part) {
  switch (part) {
    case BodyPart::kTorso: return "torso";
    case BodyPart::kLeg: return "leg";
    case BodyPart::kArm: return "arm";
    case BodyPart::kHead: return "head";
    case BodyPart::kHand: return "hand";
  }
  return "?";
}

}  // namespace ihvc
