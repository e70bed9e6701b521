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

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "gbbench/data.h"
#include "gbbench/error.h"
#include "gbbench/random.h"

namespace gbbench {

FoldPlan StratifiedKFold(std::span<const int32_t> labels, int k, uint64_t seed) {
  if (k < 2) Fail(ErrorCode::kParameter, "fold count must be at least 2");
  if (static_cast<size_t>(k) > labels.size()) {
    Fail(ErrorCode::kParameter, "fold count " + std::to_string(k) + " exceeds " +
                                    std::to_string(labels.size()) + " rows");
  }
  std::map<int32_t, std::vector<uint32_t>> by_class;
  for (size_t i = 0; i < labels.size(); ++i) {
    by_class[labels[i]].push_back(static_cast<uint32_t>(i));
  }
  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.assignments.assign(labels.size(), -1);
  int next_fold = 0;
  for (auto& [label, rows] : by_class) {
    if (rows.size() < static_cast<size_t>(k)) {
      plan.warnings.push_back("class " + std::to_string(label) + " has " +
                              std::to_string(rows.size()) + " rows, fewer than " +
                              std::to_string(k) + " folds");
    }
    Rng rng(DeriveSeed(seed, {static_cast<uint64_t>(label)}));
    rng.Shuffle(std::span<uint32_t>(rows));
    for (uint32_t row : rows) {
      plan.assignments[row] = next_fold;
      next_fold = (next_fold + 1) % k;
    }
  }
  return plan;
}

std::vector<uint32_t> FoldPlan::TrainRows(int fold) const {
  std::vector<uint32_t> rows;
  for (size_t i = 0; i < assignments.size(); ++i) {
    if (assignments[i] != fold) rows.push_back(static_cast<uint32_t>(i));
  }
  return rows;
}

std::vector<uint32_t> FoldPlan::TestRows(int fold) const {
  std::vector<uint32_t> rows;
  for (size_t i = 0; i < assignments.size(); ++i) {
    if (assignments[i] == fold) rows.push_back(static_cast<uint32_t>(i));
  }
  return rows;
}

std::string FoldPlan::ToJson() const {
  std::string out = "{\"k\":" + std::to_string(k) + ",\"seed\":" + std::to_string(seed) +
                    ",\"assignments\":[";
  for (size_t i = 0; i < assignments.size(); ++i) {
    if (i > 0) out.push_back(',');
    out += std::to_string(assignments[i]);
  }
  out += "]}";
  return out;
}

}  // namespace gbbench
