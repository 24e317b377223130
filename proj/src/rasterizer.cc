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

#include <algorithm>
#include <cmath>
#include <limits>

#include "ihvc/motion_field.h"

namespace ihvc {
namespace {

using Eigen::Vector2d;

// Edge function evaluated with the endpoints in a canonical order, so a
// shared edge yields bit-identical magnitudes for both adjacent triangles.
struct Edge {
  Vector2d origin;
  Vector2d delta;
  double sign = 1.0;  // orients the edge so the interior is positive
  bool owns_boundary = false;

  double Eval(const Vector2d& p) const {
    return sign * (delta.x() * (p.y() - origin.y()) -
                   delta.y() * (p.x() - origin.x()));
  }
};

bool Less(const Vector2d& a, const Vector2d& b) {
  return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
}

// Returns false when the opposite vertex lies on the edge line.
bool SetupEdge(const Vector2d& a, const Vector2d& b, const Vector2d& opposite,
               Edge* edge) {
  const Vector2d& p = Less(a, b) ? a : b;
  const Vector2d& q = Less(a, b) ? b : a;
  edge->origin = p;
  edge->delta = q - p;
  edge->sign = 1.0;
  const double side = edge->Eval(opposite);
  if (!(side != 0.0) || !std::isfinite(side)) return false;
  edge->sign = side > 0.0 ? 1.0 : -1.0;
  // Inward normal of the oriented edge; top and left edges own their
  // boundary samples (y grows downward).
  const double nx = -edge->delta.y() * edge->sign;
  const double ny = edge->delta.x() * edge->sign;
  edge->owns_boundary = nx > 0.0 || (nx == 0.0 && ny > 0.0);
  return true;
}

struct TriangleSetup {
  Edge edges[3];  // edges[k] is opposite vertex k

  bool Init(const Vector2d& a, const Vector2d& b, const Vector2d& c) {
    return SetupEdge(b, c, a, &edges[0]) && SetupEdge(c, a, b, &edges[1]) &&
           SetupEdge(a, b, c, &edges[2]);
  }

  bool Covers(const Vector2d& p, std::array<double, 3>* bary) const {
    double w[3];
    for (int k = 0; k < 3; ++k) {
      w[k] = edges[k].Eval(p);
      if (w[k] < 0.0 || (w[k] == 0.0 && !edges[k].owns_boundary)) {
        return false;
      }
    }
    const double sum = w[0] + w[1] + w[2];
    if (bary) *bary = {w[0] / sum, w[1] / sum, w[2] / sum};
    return true;
  }
};

int ClampToInt(double v, int lo, int hi) {
  if (!(v > lo)) return lo;
  if (!(v < hi)) return hi;
  return static_cast<int>(v);
}

}  // namespace

bool CoversPoint(const Vector2d& a, const Vector2d& b, const Vector2d& c,
                 const Vector2d& p, std::array<double, 3>* bary) {
  TriangleSetup setup;
  if (!setup.Init(a, b, c)) return false;
  return setup.Covers(p, bary);
}

double InterpolateAttribute(const std::array<double, 3>& bary, double v0,
                            double v1, double v2) {
  return v0 + bary[1] * (v1 - v0) + bary[2] * (v2 - v0);
}

RasterMap Rasterize(const Mesh2D& mesh, int width, int height) {
  RasterMap map;
  map.width = width;
  map.height = height;
  const std::size_t n = static_cast<std::size_t>(width) * height;
  map.face.assign(n, kNoFace);
  map.bary.assign(n, {0.0, 0.0, 0.0});
  map.depth.assign(n, std::numeric_limits<double>::infinity());

  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const Face& face = mesh.faces[f];
    const Vector2d& a = mesh.points[face[0]];
    const Vector2d& b = mesh.points[face[1]];
    const Vector2d& c = mesh.points[face[2]];
    TriangleSetup setup;
    if (!setup.Init(a, b, c)) continue;
    const double min_x = std::min({a.x(), b.x(), c.x()});
    const double max_x = std::max({a.x(), b.x(), c.x()});
    const double min_y = std::min({a.y(), b.y(), c.y()});
    const double max_y = std::max({a.y(), b.y(), c.y()});
    const int x0 = ClampToInt(std::ceil(min_x - 0.5), 0, width);
    const int x1 = ClampToInt(std::floor(max_x - 0.5), -1, width - 1);
    const int y0 = ClampToInt(std::ceil(min_y - 0.5), 0, height);
    const int y1 = ClampToInt(std::floor(max_y - 0.5), -1, height - 1);
    const double z0 = mesh.depth[face[0]];
    const double z1 = mesh.depth[face[1]];
    const double z2 = mesh.depth[face[2]];
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        std::array<double, 3> bary;
        if (!setup.Covers(Vector2d(x + 0.5, y + 0.5), &bary)) continue;
        const double z = InterpolateAttribute(bary, z0, z1, z2);
        const std::size_t i = map.Index(x, y);
        if (z < map.depth[i]) {
          map.depth[i] = z;
          map.face[i] = static_cast<int>(f);
          map.bary[i] = bary;
        }
      }
    }
  }
  return map;
}

}  // namespace ihvc
