/*
 * Copyright 2026 The gbbench Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GBBENCH_TESTS_SYNTHETIC_H_
#define GBBENCH_TESTS_SYNTHETIC_H_

#include <cmath>
#include <vector>

#include "gbbench/data.h"
#include "gbbench/random.h"
#include "test_util.h"

namespace gbbench::testing {

// Two gaussian-free blobs split by x0 + x1 > 0, with a margin.
inline Dataset SeparableData(size_t n, uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<double>> x;
  std::vector<int32_t> y;
  while (x.size() < n) {
    const double a = rng.Uniform(-1, 1);
    const double b = rng.Uniform(-1, 1);
    if (std::abs(a + b) < 0.2) continue;
    x.push_back({a, b});
    y.push_back(a + b > 0 ? 1 : 0);
  }
  return DenseDataset(x, y);
}

// Sign of x0 * x1 with 10% label noise, plus a nuisance feature.
inline Dataset NoisyXorData(size_t n, uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<double>> x;
  std::vector<int32_t> y;
  for (size_t i = 0; i < n; ++i) {
    const double a = rng.Uniform(-1, 1);
    const double b = rng.Uniform(-1, 1);
    int label = a * b > 0 ? 1 : 0;
    if (rng.Uniform() < 0.1) label = 1 - label;
    x.push_back({a, b, rng.Uniform(-1, 1)});
    y.push_back(label);
  }
  return DenseDataset(x, y);
}

// 9:1 class ratio; the minority class is shifted in two of four features.
inline Dataset ImbalancedData(size_t n, uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<double>> x;
  std::vector<int32_t> y;
  for (size_t i = 0; i < n; ++i) {
    const int label = i % 10 == 0 ? 1 : 0;
    const double shift = label ? 1.0 : 0.0;
    x.push_back({rng.Normal() + shift, rng.Normal() + shift, rng.Normal(), rng.Normal()});
    y.push_back(label);
  }
  return DenseDataset(x, y);
}

// Three classes around the corners of a triangle.
inline Dataset ThreeClassData(size_t n, uint64_t seed) {
  Rng rng(seed);
  const double cx[3] = {0.0, 2.0, 1.0};
  const double cy[3] = {0.0, 0.0, 1.7};
  std::vector<std::vector<double>> x;
  std::vector<int32_t> y;
  for (size_t i = 0; i < n; ++i) {
    const int c = static_cast<int>(i % 3);
    x.push_back({cx[c] + 0.6 * rng.Normal(), cy[c] + 0.6 * rng.Normal()});
    y.push_back(c);
  }
  return DenseDataset(x, y, 3);
}

}  // namespace gbbench::testing

#endif  // GBBENCH_TESTS_SYNTHETIC_H_
