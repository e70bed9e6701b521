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

#include "gbbench/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gbbench/error.h"

namespace gbbench {

namespace {

void CheckLengths(size_t a, size_t b) {
  if (a != b) Fail(ErrorCode::kParameter, "length mismatch");
  if (a == 0) Fail(ErrorCode::kParameter, "empty input");
}

struct Confusion {
  double tp = 0, fp = 0, fn = 0;
};

Confusion Count(std::span<const int32_t> truth, std::span<const int32_t> predicted, int32_t c) {
  Confusion k;
  for (size_t i = 0; i < truth.size(); ++i) {
    const bool t = truth[i] == c;
    const bool p = predicted[i] == c;
    k.tp += t && p;
    k.fp += !t && p;
    k.fn += t && !p;
  }
  return k;
}

double F1Of(const Confusion& k) {
  const double precision = k.tp + k.fp > 0 ? k.tp / (k.tp + k.fp) : 0.0;
  const double recall = k.tp + k.fn > 0 ? k.tp / (k.tp + k.fn) : 0.0;
  return precision + recall > 0 ? 2 * precision * recall / (precision + recall) : 0.0;
}

}  // namespace

double Accuracy(std::span<const int32_t> truth, std::span<const int32_t> predicted) {
  CheckLengths(truth.size(), predicted.size());
  size_t hits = 0;
  for (size_t i = 0; i < truth.size(); ++i) hits += truth[i] == predicted[i];
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

double F1Binary(std::span<const int32_t> truth, std::span<const int32_t> predicted,
                int32_t positive) {
  CheckLengths(truth.size(), predicted.size());
  return F1Of(Count(truth, predicted, positive));
}

double F1Weighted(std::span<const int32_t> truth, std::span<const int32_t> predicted) {
  CheckLengths(truth.size(), predicted.size());
  std::vector<int32_t> classes(truth.begin(), truth.end());
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  double total = 0.0;
  for (int32_t c : classes) {
    const double support = static_cast<double>(std::count(truth.begin(), truth.end(), c));
    total += support * F1Of(Count(truth, predicted, c));
  }
  return total / static_cast<double>(truth.size());
}

// Rank-sum form: sort once, give tied scores their mid-rank.
double AucBinary(std::span<const uint8_t> positive, std::span<const double> score) {
  CheckLengths(positive.size(), score.size());
  const size_t n = score.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return score[a] < score[b]; });
  double n_pos = 0.0;
  double rank_sum2 = 0.0;  // twice the positive rank sum, kept integral
  for (size_t i = 0; i < n;) {
    size_t j = i;
    while (j < n && score[order[j]] == score[order[i]]) ++j;
    const double twice_mid_rank = static_cast<double>(i + 1 + j);  // ranks i+1..j
    for (size_t k = i; k < j; ++k) {
      if (positive[order[k]]) {
        n_pos += 1;
        rank_sum2 += twice_mid_rank;
      }
    }
    i = j;
  }
  const double n_neg = static_cast<double>(n) - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    Fail(ErrorCode::kUndefinedMetric, "AUC needs both positive and negative rows");
  }
  const double u2 = rank_sum2 - n_pos * (n_pos + 1);
  return u2 / (2.0 * n_pos * n_neg);
}

WeightedAuc AucWeightedOvr(std::span<const int32_t> truth, std::span<const double> scores,
                           int num_classes) {
  if (num_classes < 2) Fail(ErrorCode::kParameter, "need at least 2 classes");
  CheckLengths(truth.size() * static_cast<size_t>(num_classes), scores.size());
  WeightedAuc out;
  double weight = 0.0;
  double total = 0.0;
  std::vector<uint8_t> indicator(truth.size());
  std::vector<double> column(truth.size());
  for (int c = 0; c < num_classes; ++c) {
    size_t support = 0;
    for (size_t i = 0; i < truth.size(); ++i) {
      indicator[i] = truth[i] == c;
      support += indicator[i];
      column[i] = scores[i * static_cast<size_t>(num_classes) + static_cast<size_t>(c)];
    }
    if (support == 0 || support == truth.size()) {
      out.warnings.push_back("class " + std::to_string(c) + " skipped: AUC undefined");
      continue;
    }
    total += static_cast<double>(support) * AucBinary(indicator, column);
    weight += static_cast<double>(support);
  }
  if (weight == 0.0) Fail(ErrorCode::kUndefinedMetric, "no class has a defined AUC");
  out.value = total / weight;
  return out;
}

double LogLoss(std::span<const int32_t> truth, std::span<const double> proba, int num_classes,
               double eps) {
  CheckLengths(truth.size() * static_cast<size_t>(num_classes), proba.size());
  double s = 0.0;
  for (size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] < 0 || truth[i] >= num_classes) Fail(ErrorCode::kParameter, "label out of range");
    const double p = proba[i * static_cast<size_t>(num_classes) + static_cast<size_t>(truth[i])];
    s -= std::log(std::clamp(p, eps, 1.0 - eps));
  }
  return s / static_cast<double>(truth.size());
}

}  // namespace gbbench
