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
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "gbbench/error.h"
#include "gbbench/tree.h"
#include "split_internal.h"

namespace gbbench {

FeatureIndex::FeatureIndex(const Dataset& data, const TreeParams& params)
    : data_(&data),
      split_method_(params.split_method),
      sparsity_aware_(params.sparsity_aware),
      entries_(data.num_features()),
      boundaries_(data.num_features()),
      zero_bins_(data.num_features(), 0) {
  std::vector<uint32_t> all_rows(data.num_rows());
  std::iota(all_rows.begin(), all_rows.end(), 0u);
  for (size_t f = 0; f < data.num_features(); ++f) {
    const FeatureColumn& column = data.column(f);
    std::vector<Entry>& entries = entries_[f];
    if (const auto* dense = std::get_if<DenseColumn>(&column)) {
      entries.reserve(dense->values.size());
      for (size_t r = 0; r < dense->values.size(); ++r) {
        if (!IsMissing(dense->values[r])) {
          entries.push_back({dense->values[r], static_cast<uint32_t>(r), 0});
        }
      }
    } else if (const auto* sparse = std::get_if<SparseColumn>(&column)) {
      entries.reserve(sparse->rows.size());
      for (size_t i = 0; i < sparse->rows.size(); ++i) {
        if (!IsMissing(sparse->values[i])) entries.push_back({sparse->values[i], sparse->rows[i], 0});
      }
    } else {
      Fail(ErrorCode::kSchema,
           "column '" + data.schema(f).name + "' holds raw categories; encode it first");
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
      return a.value < b.value || (a.value == b.value && a.row < b.row);
    });
    if (split_method_ == SplitMethod::kHistogram) {
      boundaries_[f] = ComputeBinBoundaries(column, all_rows, params.max_bins, sparsity_aware_);
      const auto& b = boundaries_[f];
      for (Entry& e : entries) {
        e.bin = static_cast<int32_t>(std::lower_bound(b.begin(), b.end(), e.value) - b.begin());
      }
      zero_bins_[f] = static_cast<int32_t>(std::lower_bound(b.begin(), b.end(), 0.0) - b.begin());
    }
  }
}

namespace {

using Entry = FeatureIndex::Entry;

double SafeLeafWeight(const GradStats& s, const TreeParams& params) {
  if (!(s.h + params.lambda_l2 > 0.0)) return 0.0;
  return LeafWeight(s.g, s.h, params.lambda_l2, params.alpha_l1);
}

// Per-tree state shared by all growth strategies. Each active feature keeps
// its presorted entries in one buffer; a node owns a contiguous range of
// every buffer, and splitting a node stably partitions those ranges.
class Builder {
 public:
  Builder(const FeatureIndex& index, std::span<const GradientPair> grads,
          std::span<const uint32_t> rows, std::span<const uint32_t> features,
          const TreeParams& params)
      : index_(index), params_(params), by_bin_(index.split_method() == SplitMethod::kHistogram) {
    const size_t n = index.data().num_rows();
    if (grads.size() != n) Fail(ErrorCode::kParameter, "gradient count differs from row count");
    wg_.assign(n, 0.0);
    wh_.assign(n, 0.0);
    std::vector<uint8_t> in_subset(n, 0);
    for (uint32_t r : rows) {
      if (r >= n) Fail(ErrorCode::kParameter, "row index out of range");
      if (in_subset[r]) Fail(ErrorCode::kParameter, "row subset has duplicates");
      in_subset[r] = 1;
      wg_[r] = grads[r].g * grads[r].w_sample;
      wh_[r] = grads[r].h * grads[r].w_sample;
    }
    rows_.assign(rows.begin(), rows.end());
    std::sort(rows_.begin(), rows_.end());

    features_.assign(features.begin(), features.end());
    std::sort(features_.begin(), features_.end());
    features_.erase(std::unique(features_.begin(), features_.end()), features_.end());
    offsets_.push_back(0);
    for (uint32_t f : features_) {
      if (f >= index.data().num_features()) Fail(ErrorCode::kParameter, "feature out of range");
      for (const Entry& e : index.entries(f)) {
        if (in_subset[e.row]) buffer_.push_back(e);
      }
      offsets_.push_back(static_cast<uint32_t>(buffer_.size()));
    }
    scratch_.resize(std::max(buffer_.size(), rows_.size()));
    side_.assign(n, 0);
  }

  RegressionTree Build() {
    tree_.sparsity_aware = params_.sparsity_aware;
    if (rows_.empty()) Fail(ErrorCode::kParameter, "row subset is empty");
    switch (params_.growth) {
      case Growth::kDepthWise:
        GrowDepthWise();
        break;
      case Growth::kLeafWise:
        GrowLeafWise();
        break;
      case Growth::kOblivious:
        GrowOblivious();
        break;
    }
    return std::move(tree_);
  }

 private:
  struct Work {
    int32_t node;
    int depth;
    uint32_t row_begin;
    uint32_t row_end;
    std::vector<uint32_t> begin;  // per active feature
    std::vector<uint32_t> end;
    GradStats total;
    std::optional<SplitCandidate> best;
    size_t slot = 0;  // position of best.feature in features_
  };

  GradStats SumRows(uint32_t begin, uint32_t end) const {
    GradStats s;
    for (uint32_t i = begin; i < end; ++i) s.Add(wg_[rows_[i]], wh_[rows_[i]]);
    return s;
  }

  int32_t AddNode(const GradStats& stats) {
    TreeNode node;
    node.sum_g = stats.g;
    node.sum_h = stats.h;
    node.count = stats.n;
    node.weight = SafeLeafWeight(stats, params_);
    tree_.nodes.push_back(node);
    return static_cast<int32_t>(tree_.nodes.size() - 1);
  }

  Work RootWork() {
    Work w;
    w.total = SumRows(0, static_cast<uint32_t>(rows_.size()));
    w.node = AddNode(w.total);
    w.depth = 0;
    w.row_begin = 0;
    w.row_end = static_cast<uint32_t>(rows_.size());
    w.begin.assign(offsets_.begin(), offsets_.end() - 1);
    w.end.assign(offsets_.begin() + 1, offsets_.end());
    return w;
  }

  double ZeroKey(size_t slot) const {
    return by_bin_ ? static_cast<double>(index_.zero_bin(features_[slot])) : 0.0;
  }

  internal::ScanContext Context(const GradStats& total, size_t slot) const {
    return {total,
            params_.sparsity_aware,
            by_bin_,
            index_.boundaries(features_[slot]),
            params_.lambda_l2,
            0.0,
            static_cast<int32_t>(features_[slot])};
  }

  bool Splittable(const Work& w) const {
    return w.depth < params_.max_depth &&
           w.total.n >= static_cast<uint32_t>(params_.min_samples_split);
  }

  // Features are scanned in ascending index order and only a strictly
  // better gain replaces the incumbent, so ties keep the lower feature.
  void FindBest(Work& w) {
    w.best.reset();
    if (!Splittable(w)) return;
    for (size_t k = 0; k < features_.size(); ++k) {
      const std::span<const Entry> entries(buffer_.data() + w.begin[k], w.end[k] - w.begin[k]);
      internal::BuildGroups(entries, wg_, wh_, by_bin_, groups_);
      if (!params_.sparsity_aware) {
        internal::InsertZeroGroup(w.total.Minus(internal::SumGroups(groups_)), ZeroKey(k),
                                  groups_);
      }
      auto candidate = internal::ScanGroups(groups_, Context(w.total, k));
      if (candidate && (!w.best || candidate->gain > w.best->gain)) {
        w.best = candidate;
        w.slot = k;
      }
    }
  }

  // Splits `w` by its best candidate, returning the two child work items.
  std::pair<Work, Work> Split(Work& w) {
    const SplitCandidate& split = *w.best;
    const bool missing_left = params_.sparsity_aware ? split.default_left : 0.0 <= split.threshold;
    for (uint32_t i = w.row_begin; i < w.row_end; ++i) side_[rows_[i]] = missing_left;
    for (uint32_t i = w.begin[w.slot]; i < w.end[w.slot]; ++i) {
      side_[buffer_[i].row] = buffer_[i].value <= split.threshold;
    }

    const uint32_t row_mid = PartitionRows(w.row_begin, w.row_end);
    Work left;
    Work right;
    left.begin.resize(features_.size());
    left.end.resize(features_.size());
    right.begin.resize(features_.size());
    right.end.resize(features_.size());
    for (size_t k = 0; k < features_.size(); ++k) {
      const uint32_t mid = PartitionEntries(w.begin[k], w.end[k]);
      left.begin[k] = w.begin[k];
      left.end[k] = mid;
      right.begin[k] = mid;
      right.end[k] = w.end[k];
    }
    left.row_begin = w.row_begin;
    left.row_end = row_mid;
    right.row_begin = row_mid;
    right.row_end = w.row_end;
    left.depth = right.depth = w.depth + 1;
    left.total = SumRows(left.row_begin, left.row_end);
    right.total = SumRows(right.row_begin, right.row_end);
    left.node = AddNode(left.total);
    right.node = AddNode(right.total);

    TreeNode& parent = tree_.nodes[static_cast<size_t>(w.node)];
    parent.split_feature = split.feature;
    parent.threshold = split.threshold;
    parent.default_left = params_.sparsity_aware ? split.default_left : true;
    parent.gain = split.gain;
    parent.left = left.node;
    parent.right = right.node;
    w.begin.clear();
    w.end.clear();
    return {std::move(left), std::move(right)};
  }

  uint32_t PartitionRows(uint32_t begin, uint32_t end) {
    uint32_t l = begin;
    size_t r = 0;
    for (uint32_t i = begin; i < end; ++i) {
      const uint32_t row = rows_[i];
      if (side_[row]) {
        rows_[l++] = row;
      } else {
        scratch_rows_.resize(std::max(scratch_rows_.size(), r + 1));
        scratch_rows_[r++] = row;
      }
    }
    std::copy(scratch_rows_.begin(), scratch_rows_.begin() + static_cast<std::ptrdiff_t>(r),
              rows_.begin() + l);
    return l;
  }

  uint32_t PartitionEntries(uint32_t begin, uint32_t end) {
    uint32_t l = begin;
    size_t r = 0;
    for (uint32_t i = begin; i < end; ++i) {
      const Entry e = buffer_[i];
      if (side_[e.row]) {
        buffer_[l++] = e;
      } else {
        scratch_[r++] = e;
      }
    }
    std::copy(scratch_.begin(), scratch_.begin() + static_cast<std::ptrdiff_t>(r),
              buffer_.begin() + l);
    return l;
  }

  void GrowDepthWise() {
    std::vector<Work> level;
    level.push_back(RootWork());
    while (!level.empty()) {
      std::vector<Work> next;
      for (Work& w : level) {
        FindBest(w);
        if (!w.best) continue;
        auto [left, right] = Split(w);
        next.push_back(std::move(left));
        next.push_back(std::move(right));
      }
      level = std::move(next);
    }
  }

  void GrowLeafWise() {
    std::vector<Work> frontier;
    frontier.push_back(RootWork());
    FindBest(frontier.back());
    size_t leaves = 1;
    while (leaves < static_cast<size_t>(params_.num_leaves)) {
      std::optional<size_t> pick;
      for (size_t i = 0; i < frontier.size(); ++i) {
        const Work& w = frontier[i];
        if (!w.best) continue;
        if (!pick || w.best->gain > frontier[*pick].best->gain ||
            (w.best->gain == frontier[*pick].best->gain && w.node < frontier[*pick].node)) {
          pick = i;
        }
      }
      if (!pick) break;
      Work chosen = std::move(frontier[*pick]);
      frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(*pick));
      auto [left, right] = Split(chosen);
      FindBest(left);
      FindBest(right);
      frontier.push_back(std::move(left));
      frontier.push_back(std::move(right));
      ++leaves;
    }
  }

  struct LeafScan {
    GradStats total;
    GradStats present;
    GradStats left;
    double parent = 0.0;  // G^2 / (H + lambda) of the whole leaf
    double contribution = 0.0;
    bool dirty = false;
  };

  double ParentTerm(const GradStats& total) const {
    return total.g * total.g / (total.h + params_.lambda_l2);
  }

  double ChildGain(const GradStats& l, const GradStats& r, double parent) const {
    const double lambda = params_.lambda_l2;
    return 0.5 * (l.g * l.g / (l.h + lambda) + r.g * r.g / (r.h + lambda) - parent);
  }

  // Best admissible gain of one leaf for the current prefix, or nullopt.
  std::optional<std::pair<double, bool>> LeafGain(const LeafScan& s) const {
    // Without sparsity awareness absent rows sit in the zero group and are
    // already counted on whichever side of the threshold 0.0 falls.
    GradStats missing;
    GradStats right;
    if (params_.sparsity_aware) {
      missing = s.total.Minus(s.present);
      if (missing.n == 0) missing = {};
      right = s.present.Minus(s.left);
    } else {
      right = s.total.Minus(s.left);
    }
    std::optional<std::pair<double, bool>> best;
    GradStats l = s.left;
    l.Add(missing);
    if (internal::Admissible(l, right, params_.lambda_l2)) {
      best = {ChildGain(l, right, s.parent), true};
    }
    if (missing.n > 0) {
      GradStats r = right;
      r.Add(missing);
      if (internal::Admissible(s.left, r, params_.lambda_l2)) {
        const double gain = ChildGain(s.left, r, s.parent);
        if (!best || gain > best->first) best = {gain, false};
      }
    }
    return best;
  }

  // One shared (feature, threshold) per level, chosen to maximize the gain
  // summed over the leaves it can split. Leaves that are too small, or that
  // the shared split would leave with an empty child, stay leaves.
  void GrowOblivious() {
    const size_t n = index_.data().num_rows();
    std::vector<int32_t> leaf_of_row(n, -1);
    Work root = RootWork();
    std::vector<int32_t> level_nodes{root.node};
    for (uint32_t r : rows_) leaf_of_row[r] = 0;

    for (int depth = 0; depth < params_.max_depth; ++depth) {
      const size_t num_leaves = level_nodes.size();
      std::vector<LeafScan> scans(num_leaves);
      bool any_active = false;
      for (size_t l = 0; l < num_leaves; ++l) {
        const TreeNode& node = tree_.nodes[static_cast<size_t>(level_nodes[l])];
        scans[l].total = {node.sum_g, node.sum_h, node.count};
        scans[l].parent = ParentTerm(scans[l].total);
        any_active |= node.count >= static_cast<uint32_t>(params_.min_samples_split);
      }
      if (!any_active) break;
      // Rows of too-small leaves drop out of the scan.
      for (uint32_t r : rows_) {
        const int32_t l = leaf_of_row[r];
        if (l >= 0 && scans[static_cast<size_t>(l)].total.n <
                          static_cast<uint32_t>(params_.min_samples_split)) {
          leaf_of_row[r] = -1;
        }
      }

      std::optional<size_t> best_slot;
      double best_threshold = 0.0;
      double best_total = 0.0;
      for (size_t k = 0; k < features_.size(); ++k) {
        ScanFeatureOblivious(k, leaf_of_row, scans, best_slot, best_threshold, best_total);
      }
      if (!best_slot) break;
      level_nodes = ApplyObliviousSplit(*best_slot, best_threshold, leaf_of_row, level_nodes);
      if (level_nodes.empty()) break;
    }
  }

  void ScanFeatureOblivious(size_t k, const std::vector<int32_t>& leaf_of_row,
                            std::vector<LeafScan>& scans, std::optional<size_t>& best_slot,
                            double& best_threshold, double& best_total) {
    const std::span<const Entry> entries(buffer_.data() + offsets_[k],
                                         offsets_[k + 1] - offsets_[k]);
    for (LeafScan& s : scans) {
      s.present = {};
      s.left = {};
      s.contribution = 0.0;
      s.dirty = false;
    }
    for (const Entry& e : entries) {
      const int32_t l = leaf_of_row[e.row];
      if (l >= 0) scans[static_cast<size_t>(l)].present.Add(wg_[e.row], wh_[e.row]);
    }
    const internal::ScanContext ctx = Context({}, k);
    const double zero_key = ZeroKey(k);
    bool zero_pending = !params_.sparsity_aware;
    dirty_.clear();
    double running = 0.0;

    auto add_zero = [&]() {
      zero_pending = false;
      for (size_t l = 0; l < scans.size(); ++l) {
        LeafScan& s = scans[l];
        const GradStats absent = s.total.Minus(s.present);
        if (absent.n == 0 || s.total.n < static_cast<uint32_t>(params_.min_samples_split)) {
          continue;
        }
        s.left.Add(absent);
        if (!s.dirty) {
          s.dirty = true;
          dirty_.push_back(l);
        }
      }
    };
    auto evaluate = [&](double threshold) {
      for (size_t l : dirty_) {
        LeafScan& s = scans[l];
        s.dirty = false;
        const auto gain = LeafGain(s);
        const double c = gain ? gain->first : 0.0;
        running += c - s.contribution;
        s.contribution = c;
      }
      dirty_.clear();
      if (running > best_total) {
        best_total = running;
        best_slot = k;
        best_threshold = threshold;
      }
    };

    // Groups in key order; `prev` is the last group added to the prefix.
    internal::Group prev{0.0, 0.0, 0.0, {}};
    bool have_prev = false;
    auto enter_group = [&](const internal::Group& next) {
      if (have_prev) evaluate(internal::Threshold(prev, next, ctx));
      prev = next;
      have_prev = true;
    };
    size_t i = 0;
    while (i < entries.size()) {
      const double key = internal::GroupKey(entries[i], by_bin_);
      if (zero_pending && zero_key < key) {
        enter_group({zero_key, 0.0, 0.0, {}});
        add_zero();
      }
      internal::Group next{key, entries[i].value, entries[i].value, {}};
      if (zero_pending && zero_key == key) next.lo = std::min(next.lo, 0.0);
      enter_group(next);
      if (zero_pending && zero_key == key) add_zero();
      for (; i < entries.size() && internal::GroupKey(entries[i], by_bin_) == key; ++i) {
        const int32_t l = leaf_of_row[entries[i].row];
        if (l < 0) continue;
        LeafScan& s = scans[static_cast<size_t>(l)];
        s.left.Add(wg_[entries[i].row], wh_[entries[i].row]);
        if (!s.dirty) {
          s.dirty = true;
          dirty_.push_back(static_cast<size_t>(l));
        }
        prev.hi = entries[i].value;
      }
      if (prev.key == zero_key && !params_.sparsity_aware) prev.hi = std::max(prev.hi, 0.0);
    }
    if (zero_pending) {
      enter_group({zero_key, 0.0, 0.0, {}});
      add_zero();
    }
  }

  // Applies the shared split to every leaf it admissibly splits. Returns the
  // node ids of the next level.
  std::vector<int32_t> ApplyObliviousSplit(size_t slot, double threshold,
                                           std::vector<int32_t>& leaf_of_row,
                                           const std::vector<int32_t>& level_nodes) {
    const size_t num_leaves = level_nodes.size();
    std::vector<LeafScan> scans(num_leaves);
    for (size_t l = 0; l < num_leaves; ++l) {
      const TreeNode& node = tree_.nodes[static_cast<size_t>(level_nodes[l])];
      scans[l].total = {node.sum_g, node.sum_h, node.count};
      scans[l].parent = ParentTerm(scans[l].total);
    }
    const std::span<const Entry> entries(buffer_.data() + offsets_[slot],
                                         offsets_[slot + 1] - offsets_[slot]);
    // side_: 1 = present and <= threshold, 2 = present and > threshold, 0 = absent.
    for (uint32_t r : rows_) side_[r] = 0;
    for (const Entry& e : entries) {
      const int32_t l = leaf_of_row[e.row];
      side_[e.row] = e.value <= threshold ? 1 : 2;
      if (l < 0) continue;
      scans[static_cast<size_t>(l)].present.Add(wg_[e.row], wh_[e.row]);
      if (e.value <= threshold) scans[static_cast<size_t>(l)].left.Add(wg_[e.row], wh_[e.row]);
    }
    const bool zero_left = 0.0 <= threshold;
    if (!params_.sparsity_aware && zero_left) {
      for (LeafScan& s : scans) s.left.Add(s.total.Minus(s.present));
    }

    std::vector<int8_t> go_missing_left(num_leaves, 1);
    std::vector<int32_t> left_child(num_leaves, -1);
    std::vector<int32_t> right_child(num_leaves, -1);
    std::vector<int32_t> next_level;
    for (size_t l = 0; l < num_leaves; ++l) {
      if (scans[l].total.n < static_cast<uint32_t>(params_.min_samples_split)) continue;
      const auto gain = LeafGain(scans[l]);
      if (!gain) continue;
      go_missing_left[l] = params_.sparsity_aware ? gain->second : zero_left;
      const int32_t node_id = level_nodes[l];
      tree_.nodes[static_cast<size_t>(node_id)].split_feature =
          static_cast<int32_t>(features_[slot]);
      tree_.nodes[static_cast<size_t>(node_id)].threshold = threshold;
      tree_.nodes[static_cast<size_t>(node_id)].default_left =
          params_.sparsity_aware ? gain->second : true;
      tree_.nodes[static_cast<size_t>(node_id)].gain = gain->first;
      left_child[l] = node_id;  // placeholder until children are created
    }

    // Child statistics in row order.
    std::vector<GradStats> left_stats(num_leaves);
    std::vector<GradStats> right_stats(num_leaves);
    for (uint32_t r : rows_) {
      const int32_t l = leaf_of_row[r];
      if (l < 0 || left_child[static_cast<size_t>(l)] < 0) continue;
      const bool goes_left =
          side_[r] == 0 ? go_missing_left[static_cast<size_t>(l)] != 0 : side_[r] == 1;
      (goes_left ? left_stats : right_stats)[static_cast<size_t>(l)].Add(wg_[r], wh_[r]);
    }
    for (size_t l = 0; l < num_leaves; ++l) {
      if (left_child[l] < 0) continue;
      const int32_t parent = level_nodes[l];
      left_child[l] = AddNode(left_stats[l]);
      right_child[l] = AddNode(right_stats[l]);
      tree_.nodes[static_cast<size_t>(parent)].left = left_child[l];
      tree_.nodes[static_cast<size_t>(parent)].right = right_child[l];
      next_level.push_back(left_child[l]);
      next_level.push_back(right_child[l]);
    }
    // Re-map rows to positions in next_level.
    std::vector<int32_t> position(tree_.nodes.size(), -1);
    for (size_t i = 0; i < next_level.size(); ++i) {
      position[static_cast<size_t>(next_level[i])] = static_cast<int32_t>(i);
    }
    for (uint32_t r : rows_) {
      const int32_t l = leaf_of_row[r];
      if (l < 0 || left_child[static_cast<size_t>(l)] < 0) {
        leaf_of_row[r] = -1;
        continue;
      }
      const bool goes_left =
          side_[r] == 0 ? go_missing_left[static_cast<size_t>(l)] != 0 : side_[r] == 1;
      const int32_t child = goes_left ? left_child[static_cast<size_t>(l)]
                                      : right_child[static_cast<size_t>(l)];
      leaf_of_row[r] = position[static_cast<size_t>(child)];
    }
    return next_level;
  }

  const FeatureIndex& index_;
  const TreeParams& params_;
  const bool by_bin_;
  std::vector<double> wg_;
  std::vector<double> wh_;
  std::vector<uint32_t> rows_;
  std::vector<uint32_t> features_;
  std::vector<uint32_t> offsets_;
  std::vector<Entry> buffer_;
  std::vector<Entry> scratch_;
  std::vector<uint32_t> scratch_rows_;
  std::vector<uint8_t> side_;
  std::vector<internal::Group> groups_;
  std::vector<size_t> dirty_;
  RegressionTree tree_;
};

}  // namespace

RegressionTree FitTree(const FeatureIndex& index, std::span<const GradientPair> grads,
                       std::span<const uint32_t> rows, std::span<const uint32_t> features,
                       const TreeParams& params) {
  params.Validate();
  if (index.split_method() != params.split_method ||
      index.sparsity_aware() != params.sparsity_aware) {
    Fail(ErrorCode::kParameter, "feature index was built for different tree parameters");
  }
  Builder builder(index, grads, rows, features, params);
  return builder.Build();
}

RegressionTree FitTree(const Dataset& data, std::span<const GradientPair> grads,
                       std::span<const uint32_t> rows, std::span<const uint32_t> features,
                       const TreeParams& params) {
  params.Validate();
  const FeatureIndex index(data, params);
  return FitTree(index, grads, rows, features, params);
}

}  // namespace gbbench
