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
#include <cctype>
#include <cmath>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "gbbench/data.h"
#include "gbbench/error.h"

namespace gbbench {
namespace {

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

}  // namespace

TfidfResult TfidfVectorize(std::span<const std::string> documents, size_t vocab_size) {
  if (vocab_size < 1) Fail(ErrorCode::kParameter, "vocab_size must be at least 1");

  std::vector<std::map<std::string, double>> term_counts(documents.size());
  std::unordered_map<std::string, size_t> doc_freq;
  bool any_token = false;
  for (size_t d = 0; d < documents.size(); ++d) {
    for (std::string& token : Tokenize(documents[d])) {
      any_token = true;
      term_counts[d][std::move(token)] += 1.0;
    }
    for (const auto& [term, count] : term_counts[d]) ++doc_freq[term];
  }
  if (!any_token) Fail(ErrorCode::kVectorization, "all documents are empty");

  std::vector<std::pair<std::string, size_t>> ranked(doc_freq.begin(), doc_freq.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (ranked.size() > vocab_size) ranked.resize(vocab_size);

  TfidfResult result;
  std::unordered_map<std::string, size_t> term_index;
  std::vector<double> idf;
  const auto n_docs = static_cast<double>(documents.size());
  for (const auto& [term, df] : ranked) {
    term_index.emplace(term, result.vocabulary.size());
    result.vocabulary.push_back(term);
    idf.push_back(std::log((1.0 + n_docs) / (1.0 + static_cast<double>(df))) + 1.0);
  }
  result.columns.resize(result.vocabulary.size());

  std::vector<std::pair<size_t, double>> row;
  for (size_t d = 0; d < documents.size(); ++d) {
    row.clear();
    double norm_sq = 0.0;
    for (const auto& [term, count] : term_counts[d]) {
      const auto it = term_index.find(term);
      if (it == term_index.end()) continue;
      const double w = count * idf[it->second];
      row.emplace_back(it->second, w);
      norm_sq += w * w;
    }
    if (norm_sq == 0.0) continue;
    const double inv_norm = 1.0 / std::sqrt(norm_sq);
    for (const auto& [t, w] : row) {
      result.columns[t].rows.push_back(static_cast<uint32_t>(d));
      result.columns[t].values.push_back(w * inv_norm);
    }
  }
  return result;
}

}  // namespace gbbench
