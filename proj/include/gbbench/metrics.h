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

#ifndef GBBENCH_METRICS_H_
#define GBBENCH_METRICS_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gbbench {

double Accuracy(std::span<const int32_t> truth, std::span<const int32_t> predicted);

// F1 of class `positive` against the rest; 0 when precision + recall is 0.
double F1Binary(std::span<const int32_t> truth, std::span<const int32_t> predicted,
                int32_t positive);
// Support-weighted mean of per-class F1 over classes present in `truth`.
double F1Weighted(std::span<const int32_t> truth, std::span<const int32_t> predicted);

// Mann-Whitney AUC; `positive[i]` marks the positive rows. Ties count 1/2.
double AucBinary(std::span<const uint8_t> positive, std::span<const double> score);

struct WeightedAuc {
  double value = 0.0;
  std::vector<std::string> warnings;
};

// `scores` is row-major, num_classes per row. Classes absent from `truth`
// are skipped and the weights renormalized.
WeightedAuc AucWeightedOvr(std::span<const int32_t> truth, std::span<const double> scores,
                           int num_classes);

// -mean ln(clip(p_true, eps, 1 - eps)); `proba` is row-major.
double LogLoss(std::span<const int32_t> truth, std::span<const double> proba, int num_classes,
               double eps = 1e-15);

}  // namespace gbbench

#endif  // GBBENCH_METRICS_H_
