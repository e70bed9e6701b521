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
#include "split_internal.h"

namespace gbbench {

void TreeParams::Validate() const {
  if (max_depth < 1) Fail(ErrorCode::kParameter, "max_depth must be >= 1");
  if (num_leaves < 2) Fail(ErrorCode::kParameter, "num_leaves must be >= 2");
  if (max_bins < 2) Fail(ErrorCode::kParameter, "max_bins must be >= 2");
  if (min_samples_split < 2) Fail(ErrorCode::kParameter, "min_samples_split must be >= 2");
  if (!(gamma >= 0.0) || !(lambda_l2 >= 0.0) || !(alpha_l1 >= 0.0)) {
    Fail(ErrorCode::kParameter, "gamma, lambda_l2 and alpha_l1 must be nonnegative");
  }
}

double LeafWeight(double sum_g, double sum_h, double lambda_l2, double alpha_l1) {
  const double denom = sum_h + lambda_l2;
  if (!(denom > 0.0)) Fail(ErrorCode::kDegenerate, "degenerate leaf: H + lambda is not positive");
  double g = 0.0;
  if (sum_g > alpha_l1) {
    g = sum_g - alpha_l1;
  } else if (sum_g < -alpha_l1) {
    g = sum_g + alpha_l1;
  }
  return -g / denom;
}

double SplitGain(double g_left, double h_left, double g_right, double h_right,
                 double lambda_l2, double gamma) {
  const double g = g_left + g_right;
  const double h = h_left + h_right;
  return 0.5 * (g_left * g_left / (h_left + lambda_l2) +
                g_right * g_right / (h_right + lambda_l2) - g * g / (h + lambda_l2)) -
         gamma;
}

namespace internal {

void BuildGroups(std::span<const FeatureIndex::Entry> entries, std::span<const double> wg,
                 std::span<const double> wh, bool by_bin, std::vector<Group>& out) {
  out.clear();
  for (const FeatureIndex::Entry& e : entries) {
    const double key = GroupKey(e, by_bin);
    if (out.empty() || out.back().key != key) out.push_back({key, e.value, e.value, {}});
    Group& g = out.back();
    g.stats.Add(wg[e.row], wh[e.row]);
    g.hi = e.value;
  }
}

void InsertZeroGroup(const GradStats& zero, double zero_key, std::vector<Group>& groups) {
  if (zero.n == 0) return;
  const auto it = std::lower_bound(groups.begin(), groups.end(), zero_key,
                                   [](const Group& g, double key) { return g.key < key; });
  if (it != groups.end() && it->key == zero_key) {
    it->stats.Add(zero);
    it->lo = std::min(it->lo, 0.0);
    it->hi = std::max(it->hi, 0.0);
  } else {
    groups.insert(it, Group{zero_key, 0.0, 0.0, zero});
  }
}

GradStats SumGroups(std::span<const Group> groups) {
  GradStats s;
  for (const Group& g : groups) s.Add(g.stats);
  return s;
}

double Threshold(const Group& left, const Group& right, const ScanContext& ctx) {
  if (ctx.by_bin) return ctx.boundaries[static_cast<size_t>(left.key)];
  const double mid = left.hi + (right.lo - left.hi) * 0.5;
  return mid < right.lo ? mid : left.hi;
}

std::optional<SplitCandidate> ScanGroups(std::span<const Group> groups, const ScanContext& ctx) {
  if (groups.size() < 2) return std::nullopt;
  const GradStats present = SumGroups(groups);
  GradStats missing = ctx.total.Minus(present);
  if (missing.n == 0) missing = {};
  const double lambda = ctx.lambda_l2;
  GradStats all = present;
  all.Add(missing);
  const double parent = all.g * all.g / (all.h + lambda);

  double best_gain = 0.0;
  size_t best_i = 0;
  bool best_default_left = true;
  bool found = false;
  auto score = [&](double lg, double lh, uint32_t ln, double rg, double rh, uint32_t rn,
                   bool default_left, size_t i) {
    if (ln < 1 || rn < 1 || !(lh + lambda > 0.0) || !(rh + lambda > 0.0)) return;
    const double gain =
        0.5 * (lg * lg / (lh + lambda) + rg * rg / (rh + lambda) - parent) - ctx.gamma;
    if (gain > best_gain) {
      best_gain = gain;
      best_i = i;
      best_default_left = default_left;
      found = true;
    }
  };

  double g = 0.0;
  double h = 0.0;
  uint32_t n = 0;
  const size_t last = groups.size() - 1;
  for (size_t i = 0; i < last; ++i) {
    g += groups[i].stats.g;
    h += groups[i].stats.h;
    n += groups[i].stats.n;
    const double rg = present.g - g;
    const double rh = present.h - h;
    const uint32_t rn = present.n - n;
    score(g + missing.g, h + missing.h, n + missing.n, rg, rh, rn, true, i);
    if (missing.n > 0) score(g, h, n, rg + missing.g, rh + missing.h, rn + missing.n, false, i);
  }
  if (!found) return std::nullopt;

  // recompute the winning partition in the same order as the scan
  GradStats left;
  for (size_t i = 0; i <= best_i; ++i) left.Add(groups[i].stats);
  GradStats right = present.Minus(left);
  if (best_default_left) {
    left.Add(missing);
  } else {
    right.Add(missing);
  }
  return SplitCandidate{ctx.feature, Threshold(groups[best_i], groups[best_i + 1], ctx),
                        best_default_left, best_gain, left, right};
}

}  // namespace internal

namespace {

struct Prepared {
  std::vector<FeatureIndex::Entry> entries;
  std::vector<double> wg;
  std::vector<double> wh;
  GradStats total;
};

Prepared Prepare(const FeatureColumn& column, std::span<const GradientPair> grads,
                 std::span<const uint32_t> rows, std::span<const double> boundaries,
                 bool by_bin) {
  if (std::holds_alternative<CategoricalColumn>(column)) {
    Fail(ErrorCode::kSchema, "raw categorical columns cannot be split");
  }
  Prepared p;
  p.wg.assign(grads.size(), 0.0);
  p.wh.assign(grads.size(), 0.0);
  std::vector<bool> in_rows(grads.size(), false);
  for (uint32_t r : rows) {
    if (r >= grads.size()) Fail(ErrorCode::kParameter, "row index beyond gradient array");
    p.wg[r] = grads[r].g * grads[r].w_sample;
    p.wh[r] = grads[r].h * grads[r].w_sample;
    p.total.Add(p.wg[r], p.wh[r]);
    in_rows[r] = true;
  }
  auto push = [&](double v, uint32_t r) {
    if (IsMissing(v)) return;
    int32_t bin = 0;
    if (by_bin) {
      bin = static_cast<int32_t>(std::lower_bound(boundaries.begin(), boundaries.end(), v) -
                                 boundaries.begin());
    }
    p.entries.push_back({v, r, bin});
  };
  if (const auto* dense = std::get_if<DenseColumn>(&column)) {
    for (uint32_t r : rows) push(dense->values[r], r);
  } else {
    const auto& sparse = std::get<SparseColumn>(column);
    for (size_t i = 0; i < sparse.rows.size(); ++i) {
      const uint32_t r = sparse.rows[i];
      if (r < in_rows.size() && in_rows[r]) push(sparse.values[i], r);
    }
  }
  std::sort(p.entries.begin(), p.entries.end(), [](const auto& a, const auto& b) {
    return a.value < b.value || (a.value == b.value && a.row < b.row);
  });
  return p;
}

std::optional<SplitCandidate> BestSplitImpl(const FeatureColumn& column,
                                            std::span<const GradientPair> grads,
                                            std::span<const uint32_t> rows,
                                            std::span<const double> boundaries, bool by_bin,
                                            const TreeParams& params, int32_t feature) {
  if (rows.empty()) Fail(ErrorCode::kParameter, "row subset is empty");
  const Prepared p = Prepare(column, grads, rows, boundaries, by_bin);
  std::vector<internal::Group> groups;
  internal::BuildGroups(p.entries, p.wg, p.wh, by_bin, groups);
  if (!params.sparsity_aware) {
    const GradStats absent = p.total.Minus(internal::SumGroups(groups));
    const double zero_key =
        by_bin ? static_cast<double>(std::lower_bound(boundaries.begin(), boundaries.end(), 0.0) -
                                     boundaries.begin())
               : 0.0;
    internal::InsertZeroGroup(absent, zero_key, groups);
  }
  const internal::ScanContext ctx{p.total,   params.sparsity_aware, by_bin, boundaries,
                                  params.lambda_l2, params.gamma,   feature};
  return internal::ScanGroups(groups, ctx);
}

}  // namespace

std::optional<SplitCandidate> BestSplitExact(const FeatureColumn& column,
                                             std::span<const GradientPair> grads,
                                             std::span<const uint32_t> rows,
                                             const TreeParams& params, int32_t feature) {
  return BestSplitImpl(column, grads, rows, {}, false, params, feature);
}

std::optional<SplitCandidate> BestSplitHistogram(const FeatureColumn& column,
                                                 std::span<const GradientPair> grads,
                                                 std::span<const uint32_t> rows,
                                                 std::span<const double> boundaries,
                                                 const TreeParams& params, int32_t feature) {
  return BestSplitImpl(column, grads, rows, boundaries, true, params, feature);
}

std::vector<double> ComputeBinBoundaries(const FeatureColumn& column,
                                         std::span<const uint32_t> rows, int max_bins,
                                         bool sparsity_aware) {
  if (max_bins < 2) Fail(ErrorCode::kParameter, "max_bins must be >= 2");
  std::vector<double> values;
  values.reserve(rows.size());
  if (const auto* dense = std::get_if<DenseColumn>(&column)) {
    for (uint32_t r : rows) {
      if (!IsMissing(dense->values[r])) values.push_back(dense->values[r]);
    }
  } else if (const auto* sparse = std::get_if<SparseColumn>(&column)) {
    std::vector<uint32_t> sorted_rows(rows.begin(), rows.end());
    std::sort(sorted_rows.begin(), sorted_rows.end());
    size_t j = 0;
    for (uint32_t r : sorted_rows) {
      while (j < sparse->rows.size() && sparse->rows[j] < r) ++j;
      if (j < sparse->rows.size() && sparse->rows[j] == r && !IsMissing(sparse->values[j])) {
        values.push_back(sparse->values[j]);
      }
    }
  } else {
    Fail(ErrorCode::kSchema, "raw categorical columns cannot be binned");
  }
  const size_t absent = rows.size() - values.size();
  if (!sparsity_aware) values.insert(values.end(), absent, 0.0);
  std::sort(values.begin(), values.end());

  std::vector<double> distinct;
  std::vector<size_t> cumulative;  // rows with value <= distinct[i]
  for (size_t i = 0; i < values.size(); ++i) {
    if (distinct.empty() || values[i] != distinct.back()) {
      distinct.push_back(values[i]);
      cumulative.push_back(0);
    }
    cumulative.back() = i + 1;
  }
  auto midpoint = [&](size_t i) {
    const double mid = distinct[i] + (distinct[i + 1] - distinct[i]) * 0.5;
    return mid < distinct[i + 1] ? mid : distinct[i];
  };
  std::vector<double> boundaries;
  if (distinct.size() <= static_cast<size_t>(max_bins)) {
    for (size_t i = 0; i + 1 < distinct.size(); ++i) boundaries.push_back(midpoint(i));
    return boundaries;
  }
  const auto n = static_cast<double>(values.size());
  size_t i = 0;
  for (int b = 1; b < max_bins; ++b) {
    const double target = n * b / max_bins;
    while (i + 1 < distinct.size() && static_cast<double>(cumulative[i]) < target) ++i;
    if (i + 1 >= distinct.size()) break;
    const double boundary = midpoint(i);
    if (boundaries.empty() || boundary > boundaries.back()) boundaries.push_back(boundary);
  }
  return boundaries;
}

}  // namespace gbbench
