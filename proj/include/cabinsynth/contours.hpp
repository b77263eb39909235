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

// Contour extraction, polygon simplification and per-instance boxes.

#pragma once

#include <map>
#include <vector>

#include "cabinsynth/mask.hpp"
#include "cabinsynth/morphology.hpp"

namespace cabinsynth {

/// Closed polyline of pixel coordinates; the last vertex connects back to the
/// first. Outer borders run counter-clockwise as displayed (y pointing down).
/// Components of one or two pixels yield contours of one or two vertices.
using Contour = std::vector<PixelCoord>;

/// Outer border of every 8-connected foreground component, in raster order
/// of each component's first pixel. Holes are not reported.
std::vector<Contour> trace_contours(const BinaryMask& mask);

/// Douglas-Peucker simplification of a closed contour. Every input vertex
/// stays within `epsilon` of the output polygon; vertices lying exactly on the
/// segment between their neighbours are dropped, so epsilon = 0 only removes
/// collinear points. Throws DomainError for negative epsilon.
Contour approx_polygon(const Contour& contour, double epsilon = 1.0);

/// Tightest box around the vertices. Throws EmptyRegionError for an empty contour.
BoundingBox bbox_of(const Contour& contour);

/// Union of the boxes of all contours. Throws EmptyRegionError when empty.
BoundingBox bbox_of(const std::vector<Contour>& contours);

struct ComponentLabels {
  /// 0 = background, 1..count = component index.
  Raster<int> labels;
  int count = 0;
};

/// 8-connected component labelling of the foreground.
ComponentLabels label_components(const BinaryMask& mask);

struct InstanceBoxes {
  std::map<InstanceId, BoundingBox> boxes;
  /// Ids present in the input that have no pixel left after cleaning.
  std::vector<InstanceId> vanished;
};

/// Per instance: extract, close with `se`, trace contours, and take the union
/// box of that instance's contours.
InstanceBoxes instance_bboxes(const IndexedMask& mask,
                              const StructuringElement& se = StructuringElement(3));

/// The cleaned (closed) binary mask of one instance.
BinaryMask cleaned_instance(const IndexedMask& mask, InstanceId id, const StructuringElement& se);

}  // namespace cabinsynth
