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

#ifndef GBBENCH_TREE_SPLIT_INTERNAL_H_
#define GBBENCH_TREE_SPLIT_INTERNAL_H_

#include <optional>
#include <span>
#include <vector>

#include "gbbench/tree.h"

namespace gbbench::internal {

// Rows of one node that share a value (exact) or a bin (histogram).
struct Group {
  double key;
  double lo;
  double hi;
  GradStats stats;
};

struct ScanContext {
  GradStats total;  // all rows of the node, present or not
  bool sparsity_aware;
  bool by_bin;
  std::span<const double> boundaries;
  double lambda_l2;
  double gamma;
  int32_t feature;
};

inline double GroupKey(const FeatureIndex::Entry& e, bool by_bin) {
  return by_bin ? static_cast<double>(e.bin) : e.value;
}

// Collapses sorted entries into groups.
void BuildGroups(std::span<const FeatureIndex::Entry> entries, std::span<const double> wg,
                 std::span<const double> wh, bool by_bin, std::vector<Group>& out);

// Adds rows read as 0.0 to the group with key `zero_key`, creating it in key
// order when absent.
void InsertZeroGroup(const GradStats& zero, double zero_key, std::vector<Group>& groups);

GradStats SumGroups(std::span<const Group> groups);

// Gain-maximal split among the boundaries between consecutive groups.
std::optional<SplitCandidate> ScanGroups(std::span<const Group> groups, const ScanContext& ctx);

// Threshold separating group `left` from the next group `right`.
double Threshold(const Group& left, const Group& right, const ScanContext& ctx);

// True when both children are admissible.
inline bool Admissible(const GradStats& l, const GradStats& r, double lambda_l2) {
  return l.n >= 1 && r.n >= 1 && l.h + lambda_l2 > 0.0 && r.h + lambda_l2 > 0.0;
}

}  // namespace gbbench::internal

#endif  // GBBENCH_TREE_SPLIT_INTERNAL_H_
