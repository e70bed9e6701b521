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

#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "gbbench/data.h"
#include "gbbench/error.h"
#include "gbbench/random.h"

namespace gbbench {
namespace {

const CategoricalColumn& RequireCategorical(const Dataset& data, size_t column) {
  if (column >= data.num_features()) {
    Fail(ErrorCode::kSchema, "column index " + std::to_string(column) + " out of range");
  }
  const auto* cat = std::get_if<CategoricalColumn>(&data.column(column));
  if (cat == nullptr) {
    Fail(ErrorCode::kSchema, "column '" + data.schema(column).name + "' is not categorical");
  }
  return *cat;
}

void CheckOptions(const Dataset& data, const OrderedTargetOptions& options) {
  if (!(options.prior_weight > 0.0)) {
    Fail(ErrorCode::kParameter, "prior_weight must be positive");
  }
  if (options.target_class &&
      (*options.target_class < 0 ||
       *options.target_class >= static_cast<int32_t>(data.num_classes()))) {
    Fail(ErrorCode::kParameter, "target_class out of range");
  }
}

int32_t TargetClass(const Dataset& data, const OrderedTargetOptions& options) {
  return options.target_class.value_or(static_cast<int32_t>(data.num_classes()) - 1);
}

// Missing tokens (code -1) form their own category.
struct CategoryStats {
  double sum = 0.0;
  double count = 0.0;
};

std::vector<double> Targets(const Dataset& data, int32_t target_class) {
  std::vector<double> t(data.num_rows());
  for (size_t i = 0; i < t.size(); ++i) t[i] = data.labels()[i] == target_class ? 1.0 : 0.0;
  return t;
}

double Mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

std::vector<double> OrderedTargetEncode(const Dataset& data, size_t column,
                                        const OrderedTargetOptions& options) {
  const CategoricalColumn& cat = RequireCategorical(data, column);
  CheckOptions(data, options);
  const std::vector<double> targets = Targets(data, TargetClass(data, options));
  const double prior = Mean(targets);
  const double a = options.prior_weight;

  std::vector<uint32_t> order(data.num_rows());
  std::iota(order.begin(), order.end(), 0u);
  Rng rng(options.seed);
  rng.Shuffle(std::span<uint32_t>(order));

  // Index 0 is the missing-token category.
  std::vector<CategoryStats> stats(cat.levels.size() + 1);
  std::vector<double> encoded(data.num_rows());
  for (uint32_t row : order) {
    CategoryStats& s = stats[static_cast<size_t>(cat.codes[row] + 1)];
    encoded[row] = (s.sum + a * prior) / (s.count + a);
    s.sum += targets[row];
    s.count += 1.0;
  }
  return encoded;
}

std::vector<double> ApplyTargetStatistics(const Dataset& train, size_t column,
                                          const Dataset& eval,
                                          const OrderedTargetOptions& options) {
  const CategoricalColumn& train_cat = RequireCategorical(train, column);
  const CategoricalColumn& eval_cat = RequireCategorical(eval, column);
  CheckOptions(train, options);
  const std::vector<double> targets = Targets(train, TargetClass(train, options));
  const double prior = Mean(targets);
  const double a = options.prior_weight;

  std::unordered_map<std::string, CategoryStats> by_token;
  CategoryStats missing;
  for (size_t i = 0; i < targets.size(); ++i) {
    const int32_t code = train_cat.codes[i];
    CategoryStats& s =
        code < 0 ? missing : by_token[train_cat.levels[static_cast<size_t>(code)]];
    s.sum += targets[i];
    s.count += 1.0;
  }
  std::vector<double> encoded(eval.num_rows());
  for (size_t i = 0; i < encoded.size(); ++i) {
    const int32_t code = eval_cat.codes[i];
    CategoryStats s = missing;
    if (code >= 0) {
      const auto it = by_token.find(eval_cat.levels[static_cast<size_t>(code)]);
      s = it == by_token.end() ? CategoryStats{} : it->second;
    }
    encoded[i] = (s.sum + a * prior) / (s.count + a);
  }
  return encoded;
}

EncodedPair EncodeCategoricals(const Dataset& train, const Dataset& eval,
                               const OrderedTargetOptions& options) {
  if (train.num_features() != eval.num_features()) {
    Fail(ErrorCode::kSchema, "train and eval schemas differ");
  }
  EncodedPair out{train, eval};
  for (size_t f = 0; f < train.num_features(); ++f) {
    if (train.schema(f).kind != ColumnKind::kCategorical) continue;
    OrderedTargetOptions column_options = options;
    column_options.seed = DeriveSeed(options.seed, {f});
    std::vector<double> train_values = OrderedTargetEncode(train, f, column_options);
    std::vector<double> eval_values = ApplyTargetStatistics(train, f, eval, column_options);
    const ColumnSchema schema{train.schema(f).name, ColumnKind::kCategoricalEncoded};
    out.train = out.train.ReplaceColumn(f, schema, DenseColumn{std::move(train_values)});
    out.eval = out.eval.ReplaceColumn(f, schema, DenseColumn{std::move(eval_values)});
  }
  return out;
}

}  // namespace gbbench
