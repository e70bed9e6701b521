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

#ifndef GBBENCH_RANDOM_H_
#define GBBENCH_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace gbbench {

// splitmix64 finalizer; used to decorrelate derived seeds.
uint64_t Mix64(uint64_t x);

// Seed for a sub-stream identified by `parts`, e.g. (seed, class, iteration).
uint64_t DeriveSeed(uint64_t base, std::initializer_list<uint64_t> parts);

// FNV-1a, for folding names (dataset, model) into seeds.
uint64_t HashName(std::string_view name);

// Thin wrapper over mt19937_64 whose derived distributions are implemented
// here rather than through <random> distributions, so streams are identical
// across standard library implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }
  // Uniform in [0, 1).
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  // Uniform in [0, n). n must be positive.
  uint64_t UniformInt(uint64_t n);
  double Normal();

  template <typename T>
  void Shuffle(std::span<T> items) {
    for (size_t i = items.size(); i > 1; --i) {
      const size_t j = UniformInt(i);
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gbbench

#endif  // GBBENCH_RANDOM_H_
