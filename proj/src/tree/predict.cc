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
#include <cmath>
#include <vector>

#include "gbbench/error.h"
#include "gbbench/tree.h"

namespace gbbench {

int RegressionTree::Depth() const {
  if (nodes.empty()) return 0;
  std::vector<int> depth(nodes.size(), 0);
  int deepest = 0;
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].is_leaf()) continue;
    depth[static_cast<size_t>(nodes[i].left)] = depth[i] + 1;
    depth[static_cast<size_t>(nodes[i].right)] = depth[i] + 1;
    deepest = std::max(deepest, depth[i] + 1);
  }
  return deepest;
}

size_t RegressionTree::NumLeaves() const {
  return static_cast<size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

double RegressionTree::MaxAbsLeafWeight() const {
  double m = 0.0;
  for (const TreeNode& n : nodes) {
    if (n.is_leaf()) m = std::max(m, std::abs(n.weight));
  }
  return m;
}

RegressionTree GammaPrune(const RegressionTree& tree, double gamma, double lambda_l2,
                          double alpha_l1) {
  if (!(gamma >= 0.0)) Fail(ErrorCode::kParameter, "gamma must be nonnegative");
  RegressionTree work = tree;
  std::vector<TreeNode>& nodes = work.nodes;
  // Children have larger ids, so one backward sweep reaches the fixpoint.
  for (size_t k = nodes.size(); k-- > 0;) {
    TreeNode& n = nodes[k];
    if (n.is_leaf()) continue;
    const TreeNode& l = nodes[static_cast<size_t>(n.left)];
    const TreeNode& r = nodes[static_cast<size_t>(n.right)];
    if (!l.is_leaf() || !r.is_leaf() || !(n.gain < gamma)) continue;
    n.left = n.right = -1;
    n.split_feature = -1;
    n.threshold = 0.0;
    n.default_left = true;
    n.gain = 0.0;
    n.weight = n.sum_h + lambda_l2 > 0.0 ? LeafWeight(n.sum_g, n.sum_h, lambda_l2, alpha_l1)
                                         : 0.0;
  }
  // Drop unreachable nodes, keeping parents before children.
  RegressionTree out;
  out.sparsity_aware = tree.sparsity_aware;
  if (nodes.empty()) return out;
  std::vector<int32_t> remap(nodes.size(), -1);
  std::vector<uint8_t> reachable(nodes.size(), 0);
  reachable[0] = 1;
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (!reachable[i]) continue;
    remap[i] = static_cast<int32_t>(out.nodes.size());
    out.nodes.push_back(nodes[i]);
    if (!nodes[i].is_leaf()) {
      reachable[static_cast<size_t>(nodes[i].left)] = 1;
      reachable[static_cast<size_t>(nodes[i].right)] = 1;
    }
  }
  for (TreeNode& n : out.nodes) {
    if (n.is_leaf()) continue;
    n.left = remap[static_cast<size_t>(n.left)];
    n.right = remap[static_cast<size_t>(n.right)];
  }
  return out;
}

namespace {

template <typename ValueAt>
int32_t Descend(const RegressionTree& tree, ValueAt value_at) {
  if (tree.nodes.empty()) Fail(ErrorCode::kPrediction, "empty tree");
  int32_t i = 0;
  while (!tree.nodes[static_cast<size_t>(i)].is_leaf()) {
    const TreeNode& n = tree.nodes[static_cast<size_t>(i)];
    double v = value_at(static_cast<size_t>(n.split_feature));
    bool left;
    if (IsMissing(v)) {
      left = tree.sparsity_aware ? n.default_left : 0.0 <= n.threshold;
    } else {
      left = v <= n.threshold;
    }
    i = left ? n.left : n.right;
  }
  return i;
}

}  // namespace

int32_t LeafIndex(const RegressionTree& tree, std::span<const double> row) {
  return Descend(tree, [&](size_t f) {
    if (f >= row.size()) Fail(ErrorCode::kPrediction, "row has too few features");
    return row[f];
  });
}

// Implicit sparse entries come back from Lookup as kImplicitZero; a sparsity
// aware tree routes them like missing values.
int32_t LeafIndex(const RegressionTree& tree, const Dataset& data, size_t row) {
  return Descend(tree, [&](size_t f) {
    if (f >= data.num_features()) Fail(ErrorCode::kPrediction, "dataset has too few features");
    const Cell c = data.Lookup(row, f);
    return c.state == Cell::State::kPresent ? c.value : kMissing;
  });
}

double PredictTree(const RegressionTree& tree, std::span<const double> row) {
  return tree.nodes[static_cast<size_t>(LeafIndex(tree, row))].weight;
}

double PredictTree(const RegressionTree& tree, const Dataset& data, size_t row) {
  return tree.nodes[static_cast<size_t>(LeafIndex(tree, data, row))].weight;
}

}  // namespace gbbench
