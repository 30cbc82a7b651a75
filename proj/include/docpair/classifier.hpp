// Copyright (c) 2026 The docpair Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace docpair {

/// One extracted PDF line and the page it sits on (1-based).
struct PageObservation {
  std::string line_text;
  int page_index = 1;
};

/// Lowercases, splits on non-alphanumeric bytes and drops tokens shorter
/// than two characters. Bytes >= 0x80 count as alphanumeric so UTF-8
/// words stay whole.
std::vector<std::string> tokenize(std::string_view text);

struct SparseVector {
  std::vector<std::pair<std::uint32_t, double>> entries;  // sorted by column

  bool empty() const { return entries.empty(); }
};

/// TF-IDF with smoothed idf, ln((1 + D) / (1 + df)) + 1, and L2-normalized
/// rows.
class TfIdfVectorizer {
 public:
  static TfIdfVectorizer fit(std::span<const std::string> documents);

  SparseVector transform(std::string_view text) const;

  std::size_t vocabulary_size() const { return idf_.size(); }
  bool contains(const std::string& token) const {
    return vocabulary_.count(token) != 0;
  }
  /// idf of a vocabulary token; 0 for unknown tokens.
  double idf(const std::string& token) const;

 private:
  std::unordered_map<std::string, std::uint32_t> vocabulary_;
  std::vector<double> idf_;
};

struct SvmParams {
  double lambda = 1e-4;
  int epochs = 20;
  std::uint64_t seed = 0x5eed;
};

/// One-vs-rest linear SVM trained with averaged stochastic subgradient
/// descent on the hinge loss.
class LinearPageClassifier {
 public:
  static LinearPageClassifier fit(std::span<const SparseVector> rows,
                                  std::span<const int> labels,
                                  std::size_t dimension,
                                  const SvmParams& params);

  /// Page with the highest score; ties go to the lower page.
  int predict(const SparseVector& x) const;
  std::vector<double> scores(const SparseVector& x) const;
  const std::vector<int>& pages() const { return pages_; }

 private:
  std::vector<int> pages_;
  std::vector<std::vector<double>> weights_;
  std::vector<double> bias_;
};

struct PageModel {
  TfIdfVectorizer vectorizer;
  LinearPageClassifier classifier;
};

/// Fits the vectorizer and classifier on PDF lines. Lines are
/// deduplicated by text first; a line seen on several pages keeps the
/// lowest page. Throws FitError when a page in 1..max page has no usable
/// line or the vocabulary is empty.
PageModel fit_page_classifier(std::span<const PageObservation> observations,
                              const SvmParams& params = {});

/// One page label per paragraph. Paragraphs without an in-vocabulary token
/// inherit the previous label (page 1 for the first).
std::vector<int> predict_paragraph_pages(const PageModel& model,
                                         std::span<const std::string> paragraphs);

/// Drops bare page numbers and lines repeated verbatim on at least two
/// pages and at least half of all pages, and rewrites Unicode symbols as
/// LaTeX. `pages[k]` holds the lines of page k + 1.
std::vector<std::vector<std::string>> clean_pdf_pages(
    const std::vector<std::vector<std::string>>& pages);

std::vector<PageObservation> to_observations(
    const std::vector<std::vector<std::string>>& pages);

}  // namespace docpair
