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

// Binary morphology with square structuring elements.
//
// The kernels are separable (a k x k square is a 1 x k row pass followed by a
// k x 1 column pass) and parallelized over rows with OpenMP. Brute-force
// serial versions live in cabinsynth/reference.hpp and are used by the tests.

#pragma once

#include "cabinsynth/mask.hpp"

namespace cabinsynth {

/// Square k x k structuring element with its origin at the center.
class StructuringElement {
 public:
  /// Throws DomainError unless size is odd and >= 1.
  explicit StructuringElement(int size = 3);

  int size() const noexcept { return size_; }
  int radius() const noexcept { return size_ / 2; }

  friend bool operator==(const StructuringElement&, const StructuringElement&) = default;

 private:
  int size_;
};

/// Value assumed for pixels outside the frame.
enum class BorderMode { kBackground, kForeground };

/// Set iff any pixel under the footprint is set.
BinaryMask dilate(const BinaryMask& mask, const StructuringElement& se,
                  BorderMode border = BorderMode::kBackground);

/// Set iff every pixel under the footprint is set.
BinaryMask erode(const BinaryMask& mask, const StructuringElement& se,
                 BorderMode border = BorderMode::kBackground);

/// Dilation followed by erosion.
///
/// The intermediate dilation is kept on a canvas padded by the SE radius, so
/// the result is the closing of the mask as a subset of the unbounded plane,
/// cropped back to the frame. Inside the frame this is erode(dilate(X)); at the
/// frame border it keeps foreground that a frame-clipped erosion would strip,
/// which is what makes closing extensive (X is a subset of close(X)) and
/// idempotent for masks that touch the border.
BinaryMask close(const BinaryMask& mask, const StructuringElement& se);

/// Bitwise complement.
BinaryMask complement(const BinaryMask& mask);

/// True when every foreground pixel of `a` is foreground in `b`.
bool is_subset(const BinaryMask& a, const BinaryMask& b);

}  // namespace cabinsynth
