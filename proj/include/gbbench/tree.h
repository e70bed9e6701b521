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

#ifndef GBBENCH_TREE_H_
#define GBBENCH_TREE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gbbench/data.h"

namespace gbbench {

// Per-row first and second order statistics. The sample weight multiplies
// both when rows are summed.
struct GradientPair {
  double g = 0.0;
  double h = 0.0;
  double w_sample = 1.0;
};

enum class Growth { kDepthWise, kLeafWise, kOblivious };
enum class SplitMethod { kExact, kHistogram };

struct TreeParams {
  Growth growth = Growth::kDepthWise;
  SplitMethod split_method = SplitMethod::kExact;
  int max_depth = 3;
  int num_leaves = 31;         // leaf-wise cap
  int min_samples_split = 2;   // rows a node needs to be considered for a split
  double gamma = 0.0;          // minimum loss reduction, applied by GammaPrune
  double lambda_l2 = 0.0;
  double alpha_l1 = 0.0;
  int max_bins = 256;
  // Missing and implicit sparse entries take a learned default direction.
  // Otherwise both are read as 0.0.
  bool sparsity_aware = false;

  void Validate() const;
};

struct GradStats {
  double g = 0.0;
  double h = 0.0;
  uint32_t n = 0;

  void Add(double wg, double wh) {
    g += wg;
    h += wh;
    ++n;
  }
  void Add(const GradStats& o) {
    g += o.g;
    h += o.h;
    n += o.n;
  }
  GradStats Minus(const GradStats& o) const { return {g - o.g, h - o.h, n - o.n}; }
};

struct SplitCandidate {
  int32_t feature = -1;
  double threshold = 0.0;
  bool default_left = true;
  double gain = 0.0;
  GradStats left;
  GradStats right;
};

struct TreeNode {
  int32_t split_feature = -1;
  double threshold = 0.0;
  bool default_left = true;
  int32_t left = -1;
  int32_t right = -1;
  double weight = 0.0;
  // Raw split gain (before gamma); zero for leaves.
  double gain = 0.0;
  double sum_g = 0.0;
  double sum_h = 0.0;
  uint32_t count = 0;

  bool is_leaf() const { return left < 0; }
};

// Node 0 is the root. Children always have larger indices than parents.
struct RegressionTree {
  std::vector<TreeNode> nodes;
  bool sparsity_aware = false;

  int Depth() const;
  size_t NumLeaves() const;
  size_t NumInternal() const { return nodes.size() - NumLeaves(); }
  double MaxAbsLeafWeight() const;
};

// -soft_threshold(G, alpha) / (H + lambda).
double LeafWeight(double sum_g, double sum_h, double lambda_l2, double alpha_l1);

// Second order gain of splitting a node into (L, R), minus gamma.
double SplitGain(double g_left, double h_left, double g_right, double h_right,
                 double lambda_l2, double gamma);

// Exhaustive scan of the midpoints between consecutive distinct values of
// `column` over `rows`. Returns the best candidate whose gain (with
// params.gamma subtracted) is positive. `grads` is indexed by row.
std::optional<SplitCandidate> BestSplitExact(const FeatureColumn& column,
                                             std::span<const GradientPair> grads,
                                             std::span<const uint32_t> rows,
                                             const TreeParams& params,
                                             int32_t feature = 0);

// Up to max_bins - 1 boundaries. With at most max_bins distinct values they
// are the midpoints between neighbours; otherwise equal-frequency quantiles.
std::vector<double> ComputeBinBoundaries(const FeatureColumn& column,
                                         std::span<const uint32_t> rows, int max_bins,
                                         bool sparsity_aware);

// As BestSplitExact, with candidate thresholds restricted to `boundaries`.
std::optional<SplitCandidate> BestSplitHistogram(const FeatureColumn& column,
                                                 std::span<const GradientPair> grads,
                                                 std::span<const uint32_t> rows,
                                                 std::span<const double> boundaries,
                                                 const TreeParams& params,
                                                 int32_t feature = 0);

// Presorted (and, in histogram mode, binned) feature values of a dataset.
// Built once per training set and shared by every tree fitted on it.
class FeatureIndex {
 public:
  struct Entry {
    double value;
    uint32_t row;
    int32_t bin;  // 0 in exact mode
  };

  FeatureIndex(const Dataset& data, const TreeParams& params);

  const Dataset& data() const { return *data_; }
  SplitMethod split_method() const { return split_method_; }
  bool sparsity_aware() const { return sparsity_aware_; }
  std::span<const Entry> entries(size_t f) const { return entries_[f]; }
  std::span<const double> boundaries(size_t f) const { return boundaries_[f]; }
  // Bin that an implicit or missing entry read as 0.0 falls into.
  int32_t zero_bin(size_t f) const { return zero_bins_[f]; }

 private:
  const Dataset* data_;
  SplitMethod split_method_;
  bool sparsity_aware_;
  std::vector<std::vector<Entry>> entries_;
  std::vector<std::vector<double>> boundaries_;
  std::vector<int32_t> zero_bins_;
};

// Grows one tree on `rows` using only `features`. `grads` is indexed by
// dataset row. Split search ignores gamma; apply GammaPrune afterwards.
RegressionTree FitTree(const FeatureIndex& index, std::span<const GradientPair> grads,
                       std::span<const uint32_t> rows, std::span<const uint32_t> features,
                       const TreeParams& params);

// Convenience overload that indexes `data` first. `params.split_method` and
// `params.sparsity_aware` select how the index is built.
RegressionTree FitTree(const Dataset& data, std::span<const GradientPair> grads,
                       std::span<const uint32_t> rows, std::span<const uint32_t> features,
                       const TreeParams& params);

// Collapses internal nodes with two leaf children and raw gain < gamma until
// none remain. Collapsed nodes get weights from their merged statistics.
RegressionTree GammaPrune(const RegressionTree& tree, double gamma, double lambda_l2,
                          double alpha_l1);

// `row` is dense with NaN for missing values.
int32_t LeafIndex(const RegressionTree& tree, std::span<const double> row);
int32_t LeafIndex(const RegressionTree& tree, const Dataset& data, size_t row);
double PredictTree(const RegressionTree& tree, std::span<const double> row);
double PredictTree(const RegressionTree& tree, const Dataset& data, size_t row);

}  // namespace gbbench

#endif  // GBBENCH_TREE_H_
