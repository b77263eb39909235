// Copyright 2026 The cabinsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cabinsynth/contours.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

namespace cabinsynth {

namespace {

// Neighbour offsets, clockwise as displayed: E, SE, S, SW, W, NW, N, NE.
constexpr std::array<PixelCoord, 8> kDirs{{{1, 0}, {1, 1}, {0, 1}, {-1, 1},
                                           {-1, 0}, {-1, -1}, {0, -1}, {1, -1}}};
constexpr int kWest = 4;

bool is_set(const BinaryMask& m, int x, int y) { return m.contains(x, y) && m(x, y) != 0; }

int direction_to(PixelCoord from, PixelCoord to) {
  for (int d = 0; d < 8; ++d)
    if (from.x + kDirs[d].x == to.x && from.y + kDirs[d].y == to.y) return d;
  return -1;
}

// Border following for the outer border that starts at `start`, whose west
// neighbour is background (Suzuki & Abe, outer-border case).
Contour follow_outer_border(const BinaryMask& m, PixelCoord start) {
  Contour out;
  // Clockwise search for the first foreground neighbour.
  std::optional<PixelCoord> first;
  for (int k = 0; k < 8; ++k) {
    const auto& d = kDirs[(kWest + k) % 8];
    if (is_set(m, start.x + d.x, start.y + d.y)) {
      first = PixelCoord{start.x + d.x, start.y + d.y};
      break;
    }
  }
  if (!first) {
    out.push_back(start);
    return out;
  }
  PixelCoord prev = *first;
  PixelCoord cur = start;
  for (;;) {
    // Counter-clockwise search around `cur`, starting after `prev`.
    const int back = direction_to(cur, prev);
    PixelCoord next = prev;
    for (int k = 1; k <= 8; ++k) {
      const auto& d = kDirs[(back - k + 16) % 8];
      if (is_set(m, cur.x + d.x, cur.y + d.y)) {
        next = PixelCoord{cur.x + d.x, cur.y + d.y};
        break;
      }
    }
    out.push_back(cur);
    if (next == start && cur == *first) break;
    prev = cur;
    cur = next;
  }
  return out;
}

double segment_distance(PixelCoord p, PixelCoord a, PixelCoord b) {
  const double abx = b.x - a.x, aby = b.y - a.y;
  const double apx = p.x - a.x, apy = p.y - a.y;
  const double len2 = abx * abx + aby * aby;
  if (len2 == 0.0) return std::hypot(apx, apy);
  const double t = std::clamp((apx * abx + apy * aby) / len2, 0.0, 1.0);
  return std::hypot(apx - t * abx, apy - t * aby);
}

// Exact integer test: p lies on the closed segment [a, b].
bool on_segment(PixelCoord p, PixelCoord a, PixelCoord b) {
  const long cross = static_cast<long>(b.x - a.x) * (p.y - a.y) -
                     static_cast<long>(b.y - a.y) * (p.x - a.x);
  if (cross != 0) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

// Simplifies pts[first..last] (inclusive), appending the kept vertices except
// pts[last].
void douglas_peucker(const std::vector<PixelCoord>& pts, std::size_t first, std::size_t last,
                     double epsilon, Contour& out) {
  std::vector<std::pair<std::size_t, std::size_t>> stack{{first, last}};
  std::vector<bool> keep(pts.size(), false);
  keep[first] = true;
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    double worst = -1.0;
    std::size_t worst_i = lo;
    for (std::size_t i = lo + 1; i < hi; ++i) {
      const double d = segment_distance(pts[i], pts[lo], pts[hi]);
      if (d > worst) {
        worst = d;
        worst_i = i;
      }
    }
    if (worst > epsilon) {
      keep[worst_i] = true;
      stack.emplace_back(lo, worst_i);
      stack.emplace_back(worst_i, hi);
    }
  }
  for (std::size_t i = first; i < last; ++i)
    if (keep[i]) out.push_back(pts[i]);
}

Contour drop_collinear(Contour poly) {
  bool changed = true;
  while (changed && poly.size() > 2) {
    changed = false;
    for (std::size_t i = 0; i < poly.size() && poly.size() > 2; ++i) {
      const auto& a = poly[(i + poly.size() - 1) % poly.size()];
      const auto& b = poly[(i + 1) % poly.size()];
      if (on_segment(poly[i], a, b)) {
        poly.erase(poly.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  if (poly.size() == 2 && poly[0] == poly[1]) poly.pop_back();
  return poly;
}

}  // namespace

std::vector<Contour> trace_contours(const BinaryMask& mask) {
  const ComponentLabels comp = label_components(mask);
  std::vector<Contour> contours;
  contours.reserve(static_cast<std::size_t>(comp.count));
  std::vector<bool> traced(static_cast<std::size_t>(comp.count) + 1, false);
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      const int label = comp.labels(x, y);
      if (label == 0 || traced[label]) continue;
      traced[label] = true;
      contours.push_back(follow_outer_border(mask, {x, y}));
    }
  }
  return contours;
}

Contour approx_polygon(const Contour& contour, double epsilon) {
  if (!(epsilon >= 0.0)) throw DomainError("approx_polygon: epsilon must be non-negative");
  if (contour.size() < 3) return drop_collinear(contour);

  // Split the closed curve at vertex 0 and the vertex farthest from it.
  std::size_t far = 0;
  double far_d = -1.0;
  for (std::size_t i = 1; i < contour.size(); ++i) {
    const double d = std::hypot(contour[i].x - contour[0].x, contour[i].y - contour[0].y);
    if (d > far_d) {
      far_d = d;
      far = i;
    }
  }
  std::vector<PixelCoord> closed(contour.begin(), contour.end());
  closed.push_back(contour.front());

  Contour out;
  douglas_peucker(closed, 0, far, epsilon, out);
  douglas_peucker(closed, far, closed.size() - 1, epsilon, out);
  return drop_collinear(std::move(out));
}

BoundingBox bbox_of(const Contour& contour) {
  if (contour.empty()) throw EmptyRegionError("bbox_of: empty contour");
  int x0 = contour[0].x, x1 = contour[0].x, y0 = contour[0].y, y1 = contour[0].y;
  for (const auto& p : contour) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  return {x0, y0, x1 - x0 + 1, y1 - y0 + 1};
}

BoundingBox bbox_of(const std::vector<Contour>& contours) {
  std::optional<BoundingBox> box;
  for (const auto& c : contours) {
    if (c.empty()) continue;
    const BoundingBox b = bbox_of(c);
    box = box ? bbox_union(*box, b) : b;
  }
  if (!box) throw EmptyRegionError("bbox_of: no contour vertices");
  return *box;
}

ComponentLabels label_components(const BinaryMask& mask) {
  ComponentLabels out{Raster<int>(mask.width(), mask.height(), 0), 0};
  std::vector<PixelCoord> stack;
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask(x, y) || out.labels(x, y) != 0) continue;
      const int label = ++out.count;
      out.labels(x, y) = label;
      stack.push_back({x, y});
      while (!stack.empty()) {
        const PixelCoord p = stack.back();
        stack.pop_back();
        for (const auto& d : kDirs) {
          const int nx = p.x + d.x, ny = p.y + d.y;
          if (is_set(mask, nx, ny) && out.labels(nx, ny) == 0) {
            out.labels(nx, ny) = label;
            stack.push_back({nx, ny});
          }
        }
      }
    }
  }
  return out;
}

BinaryMask cleaned_instance(const IndexedMask& mask, InstanceId id, const StructuringElement& se) {
  return close(extract_instance(mask, id), se);
}

InstanceBoxes instance_bboxes(const IndexedMask& mask, const StructuringElement& se) {
  const std::vector<InstanceId> ids = instance_ids(mask);
  std::vector<std::optional<BoundingBox>> boxes(ids.size());
  const long n = static_cast<long>(ids.size());
#pragma omp parallel for schedule(dynamic) if (n > 1)
  for (long i = 0; i < n; ++i) {
    const auto contours = trace_contours(cleaned_instance(mask, ids[i], se));
    if (!contours.empty()) boxes[i] = bbox_of(contours);
  }
  InstanceBoxes out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (boxes[i])
      out.boxes.emplace(ids[i], *boxes[i]);
    else
      out.vanished.push_back(ids[i]);
  }
  return out;
}

}  // namespace cabinsynth
