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

#include "docpair/floats.hpp"

#include <algorithm>
#include <limits>
#include <optional>

#include "docpair/text.hpp"

namespace docpair {

std::pair<MarkupDocument, std::vector<RemovedFloat>> remove_floats(
    const MarkupDocument& doc) {
  MarkupDocument body;
  body.source_id = doc.source_id;
  std::vector<RemovedFloat> removed;
  for (std::size_t i = 0; i < doc.blocks.size(); ++i) {
    if (doc.blocks[i].is_float()) {
      removed.push_back({i, doc.blocks[i]});
    } else {
      body.blocks.push_back(doc.blocks[i]);
    }
  }
  return {std::move(body), std::move(removed)};
}

namespace {

std::u32string match_text(const Block& block) {
  return utf8_decode(normalize_whitespace(
      block.kind == BlockKind::kTable ? block.raw() : block.text()));
}

// Index into `removed` of the caption a table travels with, if any.
std::optional<std::size_t> partner_caption(
    const std::vector<RemovedFloat>& removed, std::size_t k) {
  if (removed[k].block.kind != BlockKind::kTable) return std::nullopt;
  const std::size_t index = removed[k].index;
  if (k > 0 && removed[k - 1].index + 1 == index &&
      removed[k - 1].block.kind == BlockKind::kFigureCaption)
    return k - 1;
  if (k + 1 < removed.size() && removed[k + 1].index == index + 1 &&
      removed[k + 1].block.kind == BlockKind::kFigureCaption)
    return k + 1;
  return std::nullopt;
}

}  // namespace

std::vector<MarkupDocument> reinsert_floats(
    std::vector<MarkupDocument> pages, const std::vector<RemovedFloat>& removed,
    const std::vector<int>& fallback_pages,
    const std::vector<FloatRecord>& records, double max_ratio) {
  if (pages.empty()) return pages;
  const int page_count = static_cast<int>(pages.size());
  auto clamp_page = [&](int page) {
    return std::min(std::max(page, 1), page_count);
  };

  std::vector<std::u32string> record_text;
  record_text.reserve(records.size());
  for (const auto& r : records)
    record_text.push_back(utf8_decode(normalize_whitespace(r.caption_text)));
  std::vector<bool> used(records.size(), false);

  std::vector<int> target(removed.size(), 0);
  // Captions and lone tables first, in document order.
  for (std::size_t k = 0; k < removed.size(); ++k) {
    if (partner_caption(removed, k)) continue;
    const int fallback = k < fallback_pages.size() ? fallback_pages[k] : 1;
    target[k] = clamp_page(fallback);
    const std::u32string text = match_text(removed[k].block);
    std::optional<std::size_t> best;
    double best_distance = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < records.size(); ++r) {
      if (used[r]) continue;
      const double d = normalized_levenshtein(text, record_text[r]);
      if (d < best_distance) {
        best_distance = d;
        best = r;
      }
    }
    if (best && best_distance <= max_ratio &&
        records[*best].page_index >= 1 &&
        records[*best].page_index <= page_count) {
      used[*best] = true;
      target[k] = records[*best].page_index;
    }
  }
  for (std::size_t k = 0; k < removed.size(); ++k)
    if (auto partner = partner_caption(removed, k)) target[k] = target[*partner];

  for (std::size_t k = 0; k < removed.size(); ++k)
    pages[static_cast<std::size_t>(target[k] - 1)].blocks.push_back(
        removed[k].block);
  return pages;
}

}  // namespace docpair
