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

#ifndef GBBENCH_DATA_H_
#define GBBENCH_DATA_H_

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace gbbench {

// Missing cells are NaN. Implicit (unstored) entries of a sparse column are a
// separate state and read as 0.0.
inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();
inline bool IsMissing(double v) { return std::isnan(v); }

enum class ColumnKind {
  kNumeric,
  kCategorical,         // raw category tokens, must be encoded before training
  kCategoricalEncoded,  // numeric output of the ordered target encoder
  kTextDerived,         // one TF-IDF term column
};

std::string_view ColumnKindName(ColumnKind kind);

struct DenseColumn {
  std::vector<double> values;
};

// Row indices are strictly increasing.
struct SparseColumn {
  std::vector<uint32_t> rows;
  std::vector<double> values;
};

// Code -1 marks a missing token.
struct CategoricalColumn {
  std::vector<int32_t> codes;
  std::vector<std::string> levels;
};

using FeatureColumn = std::variant<DenseColumn, SparseColumn, CategoricalColumn>;

struct ColumnSchema {
  std::string name;
  ColumnKind kind = ColumnKind::kNumeric;
};

// What a tree sees when it looks up one feature of one row.
struct Cell {
  enum class State : uint8_t { kPresent, kMissing, kImplicitZero };
  State state;
  double value;  // 0.0 unless kPresent
};

// Column-oriented, immutable feature matrix with integer class labels.
class Dataset {
 public:
  Dataset() = default;
  // Validates column lengths, sparse ordering and label range. When
  // `require_all_classes` is set every class id must occur at least once;
  // held-out slices of a dataset are built without that requirement.
  Dataset(std::vector<ColumnSchema> schema, std::vector<FeatureColumn> columns,
          std::vector<int32_t> labels, std::vector<std::string> class_names,
          bool require_all_classes = true);

  size_t num_rows() const { return labels_.size(); }
  size_t num_features() const { return columns_.size(); }
  size_t num_classes() const { return class_names_.size(); }

  const FeatureColumn& column(size_t f) const { return columns_[f]; }
  const ColumnSchema& schema(size_t f) const { return schema_[f]; }
  std::span<const ColumnSchema> schemas() const { return schema_; }
  std::span<const int32_t> labels() const { return labels_; }
  const std::vector<std::string>& class_names() const { return class_names_; }

  std::optional<size_t> FindColumn(std::string_view name) const;
  bool HasRawCategoricals() const;

  // Throws for raw categorical columns.
  Cell Lookup(size_t row, size_t f) const;
  // Dense row with NaN for missing and 0.0 for implicit sparse entries.
  std::vector<double> DenseRow(size_t row) const;

  // Rows in the given order. Class coverage is not re-checked.
  Dataset Subset(std::span<const uint32_t> rows) const;
  // Copy with column `f` replaced.
  Dataset ReplaceColumn(size_t f, ColumnSchema schema, FeatureColumn column) const;

 private:
  std::vector<ColumnSchema> schema_;
  std::vector<FeatureColumn> columns_;
  std::vector<int32_t> labels_;
  std::vector<std::string> class_names_;
};

struct CsvSchema {
  std::string label_column;
  // Columns not listed here are numeric.
  std::map<std::string, ColumnKind> kinds;
  std::vector<std::string> drop;
  size_t text_vocab_size = 10000;
};

// Reads a comma separated file with a header row. Empty numeric cells become
// missing. Labels are mapped to ids by sorted distinct raw value. Text columns
// are expanded through TfidfVectorize.
Dataset LoadCsv(const std::string& path, const CsvSchema& schema);
Dataset ParseCsv(std::string_view text, const CsvSchema& schema);

struct OrderedTargetOptions {
  double prior_weight = 1.0;
  uint64_t seed = 0;
  // Class whose indicator is the target statistic; defaults to C-1.
  std::optional<int32_t> target_class;
};

// Leakage-free running target statistic over a seeded permutation of rows:
// row i gets (sum of targets of earlier same-category rows + a*P) / (n + a).
std::vector<double> OrderedTargetEncode(const Dataset& data, size_t column,
                                        const OrderedTargetOptions& options);

// Encodes `eval` rows with statistics of all `train` rows; unseen and missing
// categories receive the prior P.
std::vector<double> ApplyTargetStatistics(const Dataset& train, size_t column,
                                          const Dataset& eval,
                                          const OrderedTargetOptions& options);

struct EncodedPair {
  Dataset train;
  Dataset eval;
};

// Replaces every raw categorical column of both datasets. Levels are matched
// by token, so `train` and `eval` may come from different slices.
EncodedPair EncodeCategoricals(const Dataset& train, const Dataset& eval,
                               const OrderedTargetOptions& options);

struct TfidfResult {
  std::vector<std::string> vocabulary;
  std::vector<SparseColumn> columns;
};

// Lowercased alphanumeric tokens, top `vocab_size` terms by document
// frequency, weight tf * (ln((1+N)/(1+df)) + 1), rows L2-normalized.
TfidfResult TfidfVectorize(std::span<const std::string> documents,
                           size_t vocab_size);

struct FoldPlan {
  int k = 0;
  uint64_t seed = 0;
  std::vector<int32_t> assignments;
  std::vector<std::string> warnings;

  std::vector<uint32_t> TrainRows(int fold) const;
  std::vector<uint32_t> TestRows(int fold) const;
  std::string ToJson() const;
};

// Per class: shuffle by seed, deal round-robin. The dealing position carries
// over between classes so total fold sizes stay balanced as well.
FoldPlan StratifiedKFold(std::span<const int32_t> labels, int k, uint64_t seed);

}  // namespace gbbench

#endif  // GBBENCH_DATA_H_
