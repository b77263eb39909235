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

#include <doctest.h>

#include <random>

#include "cabinsynth/error.hpp"
#include "cabinsynth/morphology.hpp"
#include "cabinsynth/reference.hpp"
#include "support/oracles.hpp"

using namespace cabinsynth;

namespace {

// Footprint test written out per pixel: any / all of the k x k window.
BinaryMask window_op(const BinaryMask& m, int k, bool any, bool outside) {
  const int r = k / 2;
  BinaryMask out(m.width(), m.height());
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x) {
      bool acc = !any;
      for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx) {
          const bool v = m.contains(x + dx, y + dy) ? m(x + dx, y + dy) != 0 : outside;
          acc = any ? (acc || v) : (acc && v);
        }
      out(x, y) = acc;
    }
  return out;
}

int set_count(const BinaryMask& m) {
  int n = 0;
  for (auto v : m.pixels()) n += v != 0;
  return n;
}

}  // namespace

TEST_CASE("structuring element must be odd and positive") {
  CHECK_THROWS_AS(StructuringElement(0), DomainError);
  CHECK_THROWS_AS(StructuringElement(4), DomainError);
  CHECK_THROWS_AS(StructuringElement(-3), DomainError);
  CHECK(StructuringElement(5).radius() == 2);
}

TEST_CASE("empty mask is a fixed point of dilation") {
  BinaryMask m(20, 10);
  CHECK(dilate(m, StructuringElement(3)) == m);
}

TEST_CASE("single pixel dilates to a 3x3 block") {
  BinaryMask m(11, 11);
  m(5, 5) = 1;
  const auto d = dilate(m, StructuringElement(3));
  for (int y = 0; y < 11; ++y)
    for (int x = 0; x < 11; ++x) CHECK(d(x, y) == (std::abs(x - 5) <= 1 && std::abs(y - 5) <= 1));
}

TEST_CASE("eroding a full mask clears a one pixel border") {
  BinaryMask m(9, 7, 1);
  const auto e = erode(m, StructuringElement(3));
  for (int y = 0; y < 7; ++y)
    for (int x = 0; x < 9; ++x) CHECK(e(x, y) == (x > 0 && y > 0 && x < 8 && y < 6));
  CHECK(erode(m, StructuringElement(3), BorderMode::kForeground) == m);
}

TEST_CASE("closing fills a single interior hole") {
  BinaryMask m(15, 15);
  for (int y = 4; y < 11; ++y)
    for (int x = 4; x < 11; ++x) m(x, y) = 1;
  BinaryMask holed = m;
  holed(7, 7) = 0;
  CHECK(close(holed, StructuringElement(3)) == m);
}

TEST_CASE("closing keeps solid rectangles, also when they touch the frame") {
  std::mt19937_64 gen(17);
  std::uniform_int_distribution<int> pos(0, 30);
  for (int trial = 0; trial < 200; ++trial) {
    BinaryMask m(32, 32);
    int x0 = pos(gen), x1 = pos(gen), y0 = pos(gen), y1 = pos(gen);
    if (x0 > x1) std::swap(x0, x1);
    if (y0 > y1) std::swap(y0, y1);
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x) m(x, y) = 1;
    for (int k : {1, 3, 5}) CHECK(close(m, StructuringElement(k)) == m);
  }
}

TEST_CASE("separable kernels agree with the brute-force window") {
  std::mt19937_64 gen(2024);
  for (int i = 0; i < 200; ++i) {
    const auto m = oracle::random_mask(gen, 37 + i % 5, 29 + i % 7);
    for (int k : {1, 3, 5, 7}) {
      const StructuringElement se(k);
      CHECK(dilate(m, se) == window_op(m, k, true, false));
      CHECK(erode(m, se) == window_op(m, k, false, false));
      CHECK(dilate(m, se, BorderMode::kForeground) == window_op(m, k, true, true));
      CHECK(erode(m, se, BorderMode::kForeground) == window_op(m, k, false, true));
    }
  }
}

TEST_CASE("parallel kernels agree with the serial reference on large masks") {
  std::mt19937_64 gen(8);
  for (int i = 0; i < 6; ++i) {
    const auto m = oracle::random_mask(gen, 257, 193);
    for (int k : {3, 5}) {
      const StructuringElement se(k);
      CHECK(dilate(m, se) == reference::dilate(m, se));
      CHECK(erode(m, se) == reference::erode(m, se));
      CHECK(close(m, se) == reference::close(m, se));
    }
  }
}

TEST_CASE("closing laws on 200 random 64x64 masks") {
  std::mt19937_64 gen(42);
  int violations = 0;
  for (int i = 0; i < 200; ++i) {
    const auto m = oracle::random_mask(gen, 64, 64);
    for (int k : {1, 3, 5}) {
      const StructuringElement se(k);
      const auto c = close(m, se);
      violations += !is_subset(m, c);
      violations += !(close(c, se) == c);
      violations += !(erode(m, se) == complement(dilate(complement(m), se, BorderMode::kForeground)));
      violations += !is_subset(m, dilate(m, se));
      violations += !is_subset(erode(m, se), m);
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("closing inside the frame is erode of dilate") {
  std::mt19937_64 gen(99);
  for (int i = 0; i < 50; ++i) {
    const auto m = oracle::random_mask(gen, 40, 40);
    const StructuringElement se(3);
    const auto c = close(m, se);
    const auto naive = erode(dilate(m, se), se);
    // Away from the frame the clipped and unclipped closings coincide.
    for (int y = 2; y < 38; ++y)
      for (int x = 2; x < 38; ++x) CHECK(c(x, y) == naive(x, y));
    CHECK(is_subset(naive, c));
  }
}

TEST_CASE("complement and subset helpers") {
  BinaryMask a(4, 4), b(4, 4, 1);
  CHECK(is_subset(a, b));
  CHECK_FALSE(is_subset(b, a));
  CHECK(complement(a) == b);
  CHECK(set_count(complement(b)) == 0);
}
