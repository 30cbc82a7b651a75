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
#include <string>
#include <utility>
#include <vector>

#include "docpair/markup.hpp"

namespace docpair {

enum class FloatKind { kFigure, kTable };

/// A caption detected on a PDF page by an external figure extractor.
struct FloatRecord {
  std::string caption_text;
  int page_index = 1;
  FloatKind kind = FloatKind::kFigure;
};

struct RemovedFloat {
  std::size_t index = 0;  // position in the original document
  Block block;
};

/// Pulls table and figure-caption blocks out of the document.
std::pair<MarkupDocument, std::vector<RemovedFloat>> remove_floats(
    const MarkupDocument& doc);

/// Appends each removed float to the end of a page. A float goes to the
/// page of the record whose caption is closest in normalized Levenshtein
/// distance (at most `max_ratio`); otherwise to `fallback_pages[k]`
/// (1-based). A table directly next to a removed caption follows that
/// caption. Each record is used at most once.
std::vector<MarkupDocument> reinsert_floats(
    std::vector<MarkupDocument> pages, const std::vector<RemovedFloat>& removed,
    const std::vector<int>& fallback_pages,
    const std::vector<FloatRecord>& records, double max_ratio = 0.3);

}  // namespace docpair
