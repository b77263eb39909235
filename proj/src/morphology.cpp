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

#include "cabinsynth/morphology.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace cabinsynth {

namespace {

// Below this many pixels the thread start-up costs more than the work.
constexpr long kParallelThreshold = 1L << 14;

enum class Op { kAny, kAll };

// out = reduce(in) over a centered window of `radius` along rows.
void row_pass(const BinaryMask& in, BinaryMask& out, int radius, Op op, BorderMode border) {
  const int w = in.width();
  const int h = in.height();
  const bool outside_set = border == BorderMode::kForeground;
  const long area = static_cast<long>(w) * h;
#pragma omp parallel if (area > kParallelThreshold)
  {
    std::vector<int> prefix(static_cast<std::size_t>(w) + 1);
#pragma omp for schedule(static)
    for (int y = 0; y < h; ++y) {
      const auto* src = in.row(y);
      auto* dst = out.row(y);
      prefix[0] = 0;
      for (int x = 0; x < w; ++x) prefix[x + 1] = prefix[x] + src[x];
      for (int x = 0; x < w; ++x) {
        const int lo = x - radius;
        const int hi = x + radius;
        const int clo = lo < 0 ? 0 : lo;
        const int chi = hi >= w ? w - 1 : hi;
        const bool clipped = clo != lo || chi != hi;
        const int set = prefix[chi + 1] - prefix[clo];
        bool value;
        if (op == Op::kAny)
          value = set > 0 || (clipped && outside_set);
        else
          value = set == chi - clo + 1 && (!clipped || outside_set);
        dst[x] = value ? 1 : 0;
      }
    }
  }
}

void column_pass(const BinaryMask& in, BinaryMask& out, int radius, Op op, BorderMode border) {
  const int w = in.width();
  const int h = in.height();
  const bool outside_set = border == BorderMode::kForeground;
  const long area = static_cast<long>(w) * h;
#pragma omp parallel if (area > kParallelThreshold)
  {
    std::vector<int> count(static_cast<std::size_t>(w));
#pragma omp for schedule(static)
    for (int y = 0; y < h; ++y) {
      const int lo = y - radius;
      const int hi = y + radius;
      const int clo = lo < 0 ? 0 : lo;
      const int chi = hi >= h ? h - 1 : hi;
      const bool clipped = clo != lo || chi != hi;
      std::fill(count.begin(), count.end(), 0);
      for (int yy = clo; yy <= chi; ++yy) {
        const auto* src = in.row(yy);
        for (int x = 0; x < w; ++x) count[x] += src[x];
      }
      auto* dst = out.row(y);
      const int span = chi - clo + 1;
      for (int x = 0; x < w; ++x) {
        bool value;
        if (op == Op::kAny)
          value = count[x] > 0 || (clipped && outside_set);
        else
          value = count[x] == span && (!clipped || outside_set);
        dst[x] = value ? 1 : 0;
      }
    }
  }
}

BinaryMask separable(const BinaryMask& mask, const StructuringElement& se, Op op,
                     BorderMode border) {
  if (se.radius() == 0 || mask.empty()) return mask;
  BinaryMask tmp(mask.width(), mask.height());
  BinaryMask out(mask.width(), mask.height());
  row_pass(mask, tmp, se.radius(), op, border);
  column_pass(tmp, out, se.radius(), op, border);
  return out;
}

}  // namespace

StructuringElement::StructuringElement(int size) : size_(size) {
  if (size < 1 || size % 2 == 0)
    throw DomainError("structuring element size must be odd and >= 1, got " + std::to_string(size));
}

BinaryMask dilate(const BinaryMask& mask, const StructuringElement& se, BorderMode border) {
  return separable(mask, se, Op::kAny, border);
}

BinaryMask erode(const BinaryMask& mask, const StructuringElement& se, BorderMode border) {
  return separable(mask, se, Op::kAll, border);
}

BinaryMask close(const BinaryMask& mask, const StructuringElement& se) {
  const int r = se.radius();
  if (r == 0 || mask.empty()) return mask;
  BinaryMask padded(mask.width() + 2 * r, mask.height() + 2 * r);
  for (int y = 0; y < mask.height(); ++y)
    std::copy(mask.row(y), mask.row(y) + mask.width(), padded.row(y + r) + r);
  const BinaryMask closed = erode(dilate(padded, se), se);
  BinaryMask out(mask.width(), mask.height());
  for (int y = 0; y < mask.height(); ++y)
    std::copy(closed.row(y + r) + r, closed.row(y + r) + r + mask.width(), out.row(y));
  return out;
}

BinaryMask complement(const BinaryMask& mask) {
  BinaryMask out(mask.width(), mask.height());
  auto src = mask.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] ? 0 : 1;
  return out;
}

bool is_subset(const BinaryMask& a, const BinaryMask& b) {
  if (a.width() != b.width() || a.height() != b.height()) return false;
  auto pa = a.pixels();
  auto pb = b.pixels();
  for (std::size_t i = 0; i < pa.size(); ++i)
    if (pa[i] && !pb[i]) return false;
  return true;
}

}  // namespace cabinsynth
