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
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gbbench/data.h"
#include "gbbench/error.h"

namespace gbbench {
namespace {

using Record = std::vector<std::string>;

// RFC 4180 style: quoted fields may hold commas, doubled quotes and newlines.
std::vector<Record> SplitRecords(std::string_view text) {
  std::vector<Record> records;
  Record current;
  std::string field;
  bool in_quotes = false;
  bool any = false;
  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        any = true;
        break;
      case ',':
        current.push_back(std::move(field));
        field.clear();
        any = true;
        break;
      case '\r':
        break;
      case '\n':
        if (any || !field.empty()) {
          current.push_back(std::move(field));
          records.push_back(std::move(current));
        }
        current.clear();
        field.clear();
        any = false;
        break;
      default:
        field.push_back(c);
        any = true;
    }
  }
  if (in_quotes) Fail(ErrorCode::kIngestion, "unterminated quoted field");
  if (any || !field.empty()) {
    current.push_back(std::move(field));
    records.push_back(std::move(current));
  }
  return records;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::optional<double> ParseNumber(std::string_view s) {
  s = Trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

// Numeric labels sort by value, anything else lexicographically.
std::vector<std::string> SortedLabelNames(const std::vector<std::string>& raw) {
  const std::set<std::string> distinct(raw.begin(), raw.end());
  std::vector<std::string> names(distinct.begin(), distinct.end());
  const bool numeric = std::all_of(names.begin(), names.end(), [](const std::string& s) {
    return ParseNumber(s).has_value();
  });
  if (numeric) {
    std::stable_sort(names.begin(), names.end(), [](const std::string& a, const std::string& b) {
      return *ParseNumber(a) < *ParseNumber(b);
    });
  }
  return names;
}

}  // namespace

Dataset ParseCsv(std::string_view text, const CsvSchema& schema) {
  std::vector<Record> records = SplitRecords(text);
  if (records.empty()) Fail(ErrorCode::kIngestion, "missing header row");
  Record header = std::move(records.front());
  records.erase(records.begin());
  for (auto& h : header) h = std::string(Trim(h));

  auto index_of = [&](const std::string& name) -> std::optional<size_t> {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return static_cast<size_t>(it - header.begin());
  };
  const auto label_index = index_of(schema.label_column);
  if (!label_index) {
    Fail(ErrorCode::kSchema, "unknown label column '" + schema.label_column + "'");
  }
  for (const auto& [name, kind] : schema.kinds) {
    if (!index_of(name)) Fail(ErrorCode::kSchema, "unknown declared column '" + name + "'");
  }
  for (const auto& name : schema.drop) {
    if (!index_of(name)) Fail(ErrorCode::kSchema, "unknown dropped column '" + name + "'");
  }
  for (size_t r = 0; r < records.size(); ++r) {
    if (records[r].size() != header.size()) {
      Fail(ErrorCode::kIngestion, "row " + std::to_string(r + 1) + " has " +
                                      std::to_string(records[r].size()) + " cells, expected " +
                                      std::to_string(header.size()));
    }
  }
  const size_t n = records.size();

  std::vector<std::string> raw_labels;
  raw_labels.reserve(n);
  for (const auto& rec : records) {
    const std::string_view cell = Trim(rec[*label_index]);
    if (cell.empty()) Fail(ErrorCode::kIngestion, "empty label cell");
    raw_labels.emplace_back(cell);
  }
  std::vector<std::string> class_names = SortedLabelNames(raw_labels);
  if (class_names.size() < 2) Fail(ErrorCode::kIngestion, "fewer than 2 classes");
  std::vector<int32_t> labels(n);
  for (size_t r = 0; r < n; ++r) {
    labels[r] = static_cast<int32_t>(
        std::find(class_names.begin(), class_names.end(), raw_labels[r]) - class_names.begin());
  }

  std::vector<ColumnSchema> out_schema;
  std::vector<FeatureColumn> out_columns;
  for (size_t c = 0; c < header.size(); ++c) {
    const std::string& name = header[c];
    if (c == *label_index ||
        std::find(schema.drop.begin(), schema.drop.end(), name) != schema.drop.end()) {
      continue;
    }
    const auto kind_it = schema.kinds.find(name);
    const ColumnKind kind = kind_it == schema.kinds.end() ? ColumnKind::kNumeric : kind_it->second;
    switch (kind) {
      case ColumnKind::kNumeric:
      case ColumnKind::kCategoricalEncoded: {
        DenseColumn column;
        column.values.resize(n);
        for (size_t r = 0; r < n; ++r) {
          const std::string_view cell = Trim(records[r][c]);
          if (cell.empty()) {
            column.values[r] = kMissing;
            continue;
          }
          const auto v = ParseNumber(cell);
          if (!v) {
            Fail(ErrorCode::kIngestion, "unparseable numeric cell '" + std::string(cell) +
                                            "' at row " + std::to_string(r + 1) + ", column '" +
                                            name + "'");
          }
          column.values[r] = *v;
        }
        out_schema.push_back({name, kind});
        out_columns.emplace_back(std::move(column));
        break;
      }
      case ColumnKind::kCategorical: {
        std::set<std::string> distinct;
        for (const auto& rec : records) {
          const std::string_view cell = Trim(rec[c]);
          if (!cell.empty()) distinct.emplace(cell);
        }
        CategoricalColumn column;
        column.levels.assign(distinct.begin(), distinct.end());
        column.codes.resize(n);
        for (size_t r = 0; r < n; ++r) {
          const std::string_view cell = Trim(records[r][c]);
          column.codes[r] =
              cell.empty() ? -1
                           : static_cast<int32_t>(std::lower_bound(column.levels.begin(),
                                                                   column.levels.end(), cell) -
                                                  column.levels.begin());
        }
        out_schema.push_back({name, kind});
        out_columns.emplace_back(std::move(column));
        break;
      }
      case ColumnKind::kTextDerived: {
        std::vector<std::string> documents;
        documents.reserve(n);
        for (const auto& rec : records) documents.push_back(rec[c]);
        TfidfResult tfidf = TfidfVectorize(documents, schema.text_vocab_size);
        for (size_t t = 0; t < tfidf.vocabulary.size(); ++t) {
          out_schema.push_back({name + ":" + tfidf.vocabulary[t], ColumnKind::kTextDerived});
          out_columns.emplace_back(std::move(tfidf.columns[t]));
        }
        break;
      }
    }
  }
  return Dataset(std::move(out_schema), std::move(out_columns), std::move(labels),
                 std::move(class_names));
}

Dataset LoadCsv(const std::string& path, const CsvSchema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseCsv(buffer.str(), schema);
}

}  // namespace gbbench
