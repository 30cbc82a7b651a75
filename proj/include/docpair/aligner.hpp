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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "docpair/classifier.hpp"
#include "docpair/floats.hpp"
#include "docpair/markup.hpp"

namespace docpair {

/// Interval-weighted Gini impurity over pages `page` and `page + 1` on the
/// half-open range [a, b). Throws std::invalid_argument for an empty or
/// out-of-range interval.
double gini_measure(std::span<const int> predictions, std::size_t a,
                    std::size_t b, int page);

/// Position t in (a, b) minimizing G[a,t) + G[t,b), smallest t on ties.
/// Needs at least two elements in [a, b).
std::size_t best_split(std::span<const int> predictions, std::size_t a,
                       std::size_t b, int page);

/// Break i (starting page i + 1) is searched from the previous break to
/// the end of the document. Breaks are strictly increasing and leave every
/// page at least one paragraph. Throws std::invalid_argument when there
/// are more pages than paragraphs.
std::vector<std::size_t> split_document(std::span<const int> predictions,
                                        int num_pages);

struct RefineParams {
  std::size_t window = 2000;         // characters on each side
  double max_distance_ratio = 0.3;   // of the fragment length
  std::size_t fragment_chars = 128;  // tail / head fragment length
};

struct RefinedBreak {
  std::size_t position = 0;
  double score = 0.0;
  std::optional<std::size_t> tail_cut;  // end of the previous-page match
  std::optional<std::size_t> head_cut;  // start of the next-page match
  double tail_distance = 1.0;           // normalized
  double head_distance = 1.0;
};

/// Locates the exact break near `coarse_pos` by approximate matching of
/// the previous page's tail and the next page's head. Positions are code
/// point offsets into `source`.
RefinedBreak refine_break(std::u32string_view source, std::size_t coarse_pos,
                          std::u32string_view prev_page_tail,
                          std::u32string_view next_page_head,
                          const RefineParams& params = {});

inline constexpr double kAcceptThreshold = 0.9;

struct SplitSolution {
  std::vector<std::size_t> breaks;  // paragraph indices
  std::vector<std::size_t> cuts;    // refined code point offsets
  std::vector<double> scores;       // one per break, in [0, 1]
  std::vector<double> page_scores;  // one per page
  std::vector<bool> accepted;       // one per page
};

/// Page score is the mean of its two boundary scores (document start and
/// end count as 1); a page is accepted at >= 0.9.
SplitSolution score_and_accept(SplitSolution solution);

struct AlignParams {
  SvmParams svm;
  RefineParams refine;
  double float_distance_ratio = 0.3;
};

struct PageSample {
  int page = 1;
  std::string markdown;
  double score = 0.0;
  bool accepted = false;
};

struct AlignedDocument {
  std::vector<PageSample> pages;
  SplitSolution solution;
  std::vector<int> predictions;
  std::string error;  // set when the document could not be aligned
};

/// Full chain for one document: float removal, classifier fit on the PDF
/// lines, paragraph prediction, Gini splitting, fuzzy refinement, scoring
/// and float reinsertion. `pdf_pages[k]` holds the raw lines of page k+1.
/// Failures that make the document unusable are reported through
/// `AlignedDocument::error` with every page rejected.
AlignedDocument align_document(const MarkupDocument& doc,
                               const std::vector<std::vector<std::string>>& pdf_pages,
                               const std::vector<FloatRecord>& records,
                               const AlignParams& params = {});

}  // namespace docpair
