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
#include <string>

#include "gbbench/data.h"
#include "gbbench/error.h"

namespace gbbench {

std::string_view ColumnKindName(ColumnKind kind) {
  switch (kind) {
    case ColumnKind::kNumeric: return "numeric";
    case ColumnKind::kCategorical: return "categorical";
    case ColumnKind::kCategoricalEncoded: return "categorical-encoded";
    case ColumnKind::kTextDerived: return "text-derived";
  }
  return "unknown";
}

namespace {

size_t ColumnLength(const FeatureColumn& column, size_t n_rows) {
  if (const auto* dense = std::get_if<DenseColumn>(&column)) {
    return dense->values.size();
  }
  if (const auto* cat = std::get_if<CategoricalColumn>(&column)) {
    return cat->codes.size();
  }
  return n_rows;  // sparse columns are checked separately
}

}  // namespace

Dataset::Dataset(std::vector<ColumnSchema> schema,
                 std::vector<FeatureColumn> columns,
                 std::vector<int32_t> labels,
                 std::vector<std::string> class_names,
                 bool require_all_classes)
    : schema_(std::move(schema)),
      columns_(std::move(columns)),
      labels_(std::move(labels)),
      class_names_(std::move(class_names)) {
  if (schema_.size() != columns_.size()) {
    Fail(ErrorCode::kSchema, "schema has " + std::to_string(schema_.size()) +
                                 " entries for " +
                                 std::to_string(columns_.size()) + " columns");
  }
  const size_t n = labels_.size();
  for (size_t f = 0; f < columns_.size(); ++f) {
    const std::string& name = schema_[f].name;
    if (ColumnLength(columns_[f], n) != n) {
      Fail(ErrorCode::kSchema, "column '" + name + "' length differs from " +
                                   std::to_string(n) + " rows");
    }
    if (const auto* sparse = std::get_if<SparseColumn>(&columns_[f])) {
      if (sparse->rows.size() != sparse->values.size()) {
        Fail(ErrorCode::kSchema, "sparse column '" + name + "' is ragged");
      }
      for (size_t i = 0; i < sparse->rows.size(); ++i) {
        if (sparse->rows[i] >= n || (i > 0 && sparse->rows[i] <= sparse->rows[i - 1])) {
          Fail(ErrorCode::kSchema, "sparse column '" + name +
                                       "' row indices must be increasing and < n_rows");
        }
      }
    }
    const bool is_cat = std::holds_alternative<CategoricalColumn>(columns_[f]);
    if (is_cat != (schema_[f].kind == ColumnKind::kCategorical)) {
      Fail(ErrorCode::kSchema, "column '" + name + "' storage does not match its kind");
    }
  }
  const auto num_classes = static_cast<int32_t>(class_names_.size());
  std::vector<bool> seen(class_names_.size(), false);
  for (int32_t y : labels_) {
    if (y < 0 || y >= num_classes) {
      Fail(ErrorCode::kSchema, "label id " + std::to_string(y) + " out of range");
    }
    seen[static_cast<size_t>(y)] = true;
  }
  if (require_all_classes) {
    if (num_classes < 2) Fail(ErrorCode::kIngestion, "fewer than 2 classes");
    for (size_t c = 0; c < seen.size(); ++c) {
      if (!seen[c]) {
        Fail(ErrorCode::kSchema, "class '" + class_names_[c] + "' has no rows");
      }
    }
  }
}

std::optional<size_t> Dataset::FindColumn(std::string_view name) const {
  for (size_t f = 0; f < schema_.size(); ++f) {
    if (schema_[f].name == name) return f;
  }
  return std::nullopt;
}

bool Dataset::HasRawCategoricals() const {
  return std::any_of(schema_.begin(), schema_.end(), [](const ColumnSchema& s) {
    return s.kind == ColumnKind::kCategorical;
  });
}

Cell Dataset::Lookup(size_t row, size_t f) const {
  const FeatureColumn& column = columns_[f];
  if (const auto* dense = std::get_if<DenseColumn>(&column)) {
    const double v = dense->values[row];
    if (IsMissing(v)) return {Cell::State::kMissing, 0.0};
    return {Cell::State::kPresent, v};
  }
  if (const auto* sparse = std::get_if<SparseColumn>(&column)) {
    const auto it = std::lower_bound(sparse->rows.begin(), sparse->rows.end(),
                                     static_cast<uint32_t>(row));
    if (it == sparse->rows.end() || *it != row) {
      return {Cell::State::kImplicitZero, 0.0};
    }
    const double v = sparse->values[static_cast<size_t>(it - sparse->rows.begin())];
    if (IsMissing(v)) return {Cell::State::kMissing, 0.0};
    return {Cell::State::kPresent, v};
  }
  Fail(ErrorCode::kSchema,
       "column '" + schema_[f].name + "' holds raw categories; encode it first");
}

std::vector<double> Dataset::DenseRow(size_t row) const {
  std::vector<double> out(columns_.size());
  for (size_t f = 0; f < columns_.size(); ++f) {
    const Cell cell = Lookup(row, f);
    out[f] = cell.state == Cell::State::kMissing ? kMissing : cell.value;
  }
  return out;
}

Dataset Dataset::Subset(std::span<const uint32_t> rows) const {
  std::vector<FeatureColumn> columns;
  columns.reserve(columns_.size());
  for (const FeatureColumn& column : columns_) {
    if (const auto* dense = std::get_if<DenseColumn>(&column)) {
      DenseColumn out;
      out.values.reserve(rows.size());
      for (uint32_t r : rows) out.values.push_back(dense->values[r]);
      columns.emplace_back(std::move(out));
    } else if (const auto* cat = std::get_if<CategoricalColumn>(&column)) {
      CategoricalColumn out;
      out.levels = cat->levels;
      out.codes.reserve(rows.size());
      for (uint32_t r : rows) out.codes.push_back(cat->codes[r]);
      columns.emplace_back(std::move(out));
    } else {
      const auto& sparse = std::get<SparseColumn>(column);
      // Output rows may be in any order; collect then sort by new index.
      std::vector<std::pair<uint32_t, double>> entries;
      for (size_t i = 0; i < rows.size(); ++i) {
        const auto it = std::lower_bound(sparse.rows.begin(), sparse.rows.end(), rows[i]);
        if (it != sparse.rows.end() && *it == rows[i]) {
          entries.emplace_back(static_cast<uint32_t>(i),
                               sparse.values[static_cast<size_t>(it - sparse.rows.begin())]);
        }
      }
      SparseColumn out;
      out.rows.reserve(entries.size());
      out.values.reserve(entries.size());
      for (const auto& [r, v] : entries) {
        out.rows.push_back(r);
        out.values.push_back(v);
      }
      columns.emplace_back(std::move(out));
    }
  }
  std::vector<int32_t> labels;
  labels.reserve(rows.size());
  for (uint32_t r : rows) labels.push_back(labels_[r]);
  return Dataset(schema_, std::move(columns), std::move(labels), class_names_,
                 /*require_all_classes=*/false);
}

Dataset Dataset::ReplaceColumn(size_t f, ColumnSchema schema,
                               FeatureColumn column) const {
  Dataset out = *this;
  out.schema_[f] = std::move(schema);
  out.columns_[f] = std::move(column);
  if (ColumnLength(out.columns_[f], num_rows()) != num_rows()) {
    Fail(ErrorCode::kSchema, "replacement column has the wrong length");
  }
  return out;
}

}  // namespace gbbench
