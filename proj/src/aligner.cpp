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

#include "docpair/aligner.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "docpair/error.hpp"
#include "docpair/text.hpp"

namespace docpair {
namespace {

struct PairCounts {
  long long own = 0;   // predictions equal to page
  long long next = 0;  // predictions equal to page + 1
};

void check_interval(std::span<const int> predictions, std::size_t a,
                    std::size_t b) {
  if (a >= b || b > predictions.size())
    throw std::invalid_argument("invalid interval [" + std::to_string(a) +
                                ", " + std::to_string(b) + ")");
}

// argmin over t in (a, min(b - 1, t_max)] with exact rational comparison.
std::size_t best_split_limited(std::span<const int> predictions,
                               std::size_t a, std::size_t b, int page,
                               std::size_t t_max) {
  check_interval(predictions, a, b);
  if (b - a < 2)
    throw std::invalid_argument("interval needs at least two elements");
  const std::size_t last = std::min(b - 1, t_max);
  if (last <= a) throw std::invalid_argument("no admissible split position");

  PairCounts total;
  for (std::size_t k = a; k < b; ++k) {
    total.own += predictions[k] == page;
    total.next += predictions[k] == page + 1;
  }
  // Minimizing G[a,t) + G[t,b) equals maximizing
  // (l1^2 + l2^2) / L + (r1^2 + r2^2) / R, compared as exact fractions.
  PairCounts left;
  std::size_t best_t = 0;
  __int128 best_num = -1, best_den = 1;
  for (std::size_t t = a + 1; t <= last; ++t) {
    left.own += predictions[t - 1] == page;
    left.next += predictions[t - 1] == page + 1;
    const long long l = static_cast<long long>(t - a);
    const long long r = static_cast<long long>(b - t);
    const long long r_own = total.own - left.own;
    const long long r_next = total.next - left.next;
    const __int128 sl = static_cast<__int128>(left.own) * left.own +
                        static_cast<__int128>(left.next) * left.next;
    const __int128 sr = static_cast<__int128>(r_own) * r_own +
                        static_cast<__int128>(r_next) * r_next;
    const __int128 num = sl * r + sr * l;
    const __int128 den = static_cast<__int128>(l) * r;
    if (best_num < 0 || num * best_den > best_num * den) {
      best_num = num;
      best_den = den;
      best_t = t;
    }
  }
  return best_t;
}

}  // namespace

double gini_measure(std::span<const int> predictions, std::size_t a,
                    std::size_t b, int page) {
  check_interval(predictions, a, b);
  double own = 0.0, next = 0.0;
  for (std::size_t k = a; k < b; ++k) {
    own += predictions[k] == page;
    next += predictions[k] == page + 1;
  }
  const double n = static_cast<double>(b - a);
  const double p_own = own / n;
  const double p_next = next / n;
  return n * (1.0 - p_own * p_own - p_next * p_next);
}

std::size_t best_split(std::span<const int> predictions, std::size_t a,
                       std::size_t b, int page) {
  return best_split_limited(predictions, a, b, page, b);
}

std::vector<std::size_t> split_document(std::span<const int> predictions,
                                        int num_pages) {
  if (num_pages < 1) throw std::invalid_argument("num_pages must be >= 1");
  const std::size_t n = predictions.size();
  const auto pages = static_cast<std::size_t>(num_pages);
  if (pages > n)
    throw std::invalid_argument(std::to_string(pages) + " pages but only " +
                                std::to_string(n) + " paragraphs");
  std::vector<std::size_t> breaks;
  std::vector<int> labels;
  std::vector<std::size_t> positions;
  std::size_t lower = 0;
  for (std::size_t i = 1; i < pages; ++i) {
    // Only labels i and i + 1 carry evidence about this break.
    const int page = static_cast<int>(i);
    labels.clear();
    positions.clear();
    for (std::size_t k = lower; k < n; ++k) {
      if (predictions[k] == page || predictions[k] == page + 1) {
        labels.push_back(predictions[k]);
        positions.push_back(k);
      }
    }
    std::size_t t = lower + 1;
    if (labels.size() >= 2) {
      const std::size_t s = best_split(labels, 0, labels.size(), page);
      // Unlabelled paragraphs between the two sides are shared evenly.
      t = (positions[s - 1] + 1 + positions[s]) / 2;
    }
    // Pages i + 1 .. num_pages still need one paragraph each.
    t = std::min(std::max(t, lower + 1), n - (pages - i));
    if (!breaks.empty() && t <= breaks.back()) t = breaks.back() + 1;
    breaks.push_back(t);
    lower = t;
  }
  return breaks;
}

RefinedBreak refine_break(std::u32string_view source, std::size_t coarse_pos,
                          std::u32string_view prev_page_tail,
                          std::u32string_view next_page_head,
                          const RefineParams& params) {
  coarse_pos = std::min(coarse_pos, source.size());
  const std::size_t lo =
      coarse_pos > params.window ? coarse_pos - params.window : 0;
  const std::size_t hi = std::min(source.size(), coarse_pos + params.window);
  const std::u32string_view window = source.substr(lo, hi - lo);
  const std::size_t target = coarse_pos - lo;

  RefinedBreak out;
  out.position = coarse_pos;
  auto limit = [&](std::size_t len) {
    return static_cast<std::size_t>(params.max_distance_ratio *
                                    static_cast<double>(len));
  };
  if (!prev_page_tail.empty()) {
    if (auto m = fuzzy_find(window, prev_page_tail, limit(prev_page_tail.size()),
                            MatchAnchor::kEnd, target)) {
      out.tail_cut = lo + m->end;
      out.tail_distance = static_cast<double>(m->distance) /
                          static_cast<double>(prev_page_tail.size());
    }
  }
  if (!next_page_head.empty()) {
    if (auto m = fuzzy_find(window, next_page_head, limit(next_page_head.size()),
                            MatchAnchor::kBegin, target)) {
      out.head_cut = lo + m->begin;
      out.head_distance = static_cast<double>(m->distance) /
                          static_cast<double>(next_page_head.size());
    }
  }

  if (out.tail_cut && out.head_cut) {
    const std::size_t a = std::min(*out.tail_cut, *out.head_cut);
    const std::size_t b = std::max(*out.tail_cut, *out.head_cut);
    bool only_space = true;
    for (std::size_t k = a; k < b; ++k) {
      const char32_t c = source[k];
      if (c != U' ' && c != U'\n' && c != U'\t' && c != U'\r') {
        only_space = false;
        break;
      }
    }
    if (only_space) {
      out.position = *out.head_cut;
      out.score = 1.0;
    } else if (out.tail_distance <= out.head_distance) {
      out.position = *out.tail_cut;
      out.score = 1.0 - out.tail_distance;
    } else {
      out.position = *out.head_cut;
      out.score = 1.0 - out.head_distance;
    }
  } else if (out.tail_cut) {
    out.position = *out.tail_cut;
    out.score = 1.0 - out.tail_distance;
  } else if (out.head_cut) {
    out.position = *out.head_cut;
    out.score = 1.0 - out.head_distance;
  }
  out.score = std::clamp(out.score, 0.0, 1.0);
  return out;
}

SplitSolution score_and_accept(SplitSolution solution) {
  const std::size_t pages = solution.breaks.size() + 1;
  solution.scores.resize(solution.breaks.size(), 0.0);
  solution.page_scores.assign(pages, 0.0);
  solution.accepted.assign(pages, false);
  for (std::size_t p = 0; p < pages; ++p) {
    const double start = p == 0 ? 1.0 : solution.scores[p - 1];
    const double end = p + 1 == pages ? 1.0 : solution.scores[p];
    solution.page_scores[p] = 0.5 * (start + end);
    solution.accepted[p] = solution.page_scores[p] >= kAcceptThreshold;
  }
  return solution;
}

namespace {

std::size_t cp_length(std::string_view utf8) {
  std::size_t n = 0;
  for (char c : utf8)
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  return n;
}

bool needs_escape(char32_t c) {
  return c == U'\\' || c == U'*' || c == U'_' || c == U'$';
}

std::size_t marker_length(SpanKind kind) {
  switch (kind) {
    case SpanKind::kBold:
      return 2;
    case SpanKind::kItalic:
      return 1;
    case SpanKind::kInlineMath:
      return 2;
    default:
      return 0;
  }
}

struct BlockSplit {
  std::optional<Block> left;
  std::optional<Block> right;
};

// Splits a block at a serialized code point offset. Paragraphs split at
// the nearest word or span boundary; other blocks move to the closer edge.
BlockSplit split_block(const Block& block, std::size_t offset) {
  const std::size_t total = cp_length(serialize_block(block));
  if (block.kind != BlockKind::kParagraph) {
    if (offset * 2 < total) return {std::nullopt, block};
    return {block, std::nullopt};
  }

  struct Candidate {
    std::size_t serialized;
    std::size_t span;
    std::size_t cut;  // code points into the span text
  };
  std::vector<Candidate> candidates;
  std::size_t pos = 0;
  std::vector<std::u32string> texts;
  for (std::size_t j = 0; j < block.content.size(); ++j) {
    const auto& span = block.content[j];
    texts.push_back(utf8_decode(span.text));
    candidates.push_back({pos, j, 0});
    const std::size_t marker = marker_length(span.kind);
    const std::u32string& text = texts.back();
    if (span.kind == SpanKind::kInlineMath) {
      pos += 2 * marker + text.size();
      continue;
    }
    std::size_t inner = pos + marker;
    for (std::size_t r = 0; r < text.size(); ++r) {
      inner += needs_escape(text[r]) ? 2 : 1;
      if (text[r] == U' ' && r + 1 < text.size())
        candidates.push_back({inner, j, r + 1});
    }
    pos = inner + marker;
  }
  candidates.push_back({pos, block.content.size(), 0});

  const Candidate* best = &candidates.front();
  auto gap = [&](const Candidate& c) {
    return c.serialized > offset ? c.serialized - offset
                                 : offset - c.serialized;
  };
  for (const auto& c : candidates)
    if (gap(c) < gap(*best)) best = &c;

  std::vector<InlineSpan> left(block.content.begin(),
                               block.content.begin() + best->span);
  std::vector<InlineSpan> right;
  std::size_t rest = best->span;
  if (best->cut > 0) {
    const auto& span = block.content[best->span];
    const std::u32string& text = texts[best->span];
    left.push_back({span.kind, utf8_encode(text.substr(0, best->cut))});
    right.push_back({span.kind, utf8_encode(text.substr(best->cut))});
    ++rest;
  }
  right.insert(right.end(), block.content.begin() + rest, block.content.end());

  auto make = [](std::vector<InlineSpan> spans) -> std::optional<Block> {
    if (!spans.empty() && spans.back().kind != SpanKind::kInlineMath) {
      auto& t = spans.back().text;
      while (!t.empty() && t.back() == ' ') t.pop_back();
    }
    if (!spans.empty() && spans.front().kind != SpanKind::kInlineMath) {
      auto& t = spans.front().text;
      t.erase(0, t.find_first_not_of(' ') == std::string::npos
                     ? t.size()
                     : t.find_first_not_of(' '));
    }
    Block b = Block::paragraph(std::move(spans));
    if (b.content.empty()) return std::nullopt;
    return b;
  };
  return {make(std::move(left)), make(std::move(right))};
}

// Distributes body blocks over pages at the given code point cuts into
// serialize_markdown(body).
std::vector<MarkupDocument> cut_pages(const MarkupDocument& body,
                                      const std::vector<std::size_t>& cuts,
                                      std::size_t page_count) {
  std::vector<MarkupDocument> pages(page_count);
  for (auto& p : pages) p.source_id = body.source_id;
  std::size_t page = 0;
  std::size_t next_cut = 0;
  std::size_t offset = 0;
  auto advance = [&] {
    ++next_cut;
    if (page + 1 < page_count) ++page;
  };
  for (const Block& original : body.blocks) {
    std::optional<Block> block = original;
    std::size_t start = offset;
    const std::size_t length = cp_length(serialize_block(original));
    const std::size_t end = offset + length;
    while (block && next_cut < cuts.size() && cuts[next_cut] < end) {
      const std::size_t c = cuts[next_cut];
      if (c <= start) {
        advance();
        continue;
      }
      BlockSplit split = split_block(*block, c - start);
      if (split.left) pages[page].blocks.push_back(std::move(*split.left));
      advance();
      block = std::move(split.right);
      start = c;
    }
    if (block) pages[page].blocks.push_back(std::move(*block));
    offset = end + 2;  // blank line between blocks
  }
  return pages;
}

}  // namespace

AlignedDocument align_document(const MarkupDocument& doc,
                               const std::vector<std::vector<std::string>>& pdf_pages,
                               const std::vector<FloatRecord>& records,
                               const AlignParams& params) {
  AlignedDocument out;
  const std::size_t page_count = pdf_pages.size();
  auto fail = [&](std::string message) {
    out.error = std::move(message);
    out.pages.clear();
    for (std::size_t p = 0; p < page_count; ++p)
      out.pages.push_back({static_cast<int>(p) + 1, "", 0.0, false});
    return out;
  };
  if (page_count == 0) return out;

  auto [body, removed] = remove_floats(doc);
  std::vector<std::string> paragraphs;
  paragraphs.reserve(body.blocks.size());
  for (const auto& block : body.blocks) paragraphs.push_back(serialize_block(block));
  if (paragraphs.size() < page_count)
    return fail(std::to_string(page_count) + " pages but only " +
                std::to_string(paragraphs.size()) + " paragraphs");

  const auto cleaned = clean_pdf_pages(pdf_pages);
  SplitSolution solution;
  if (page_count > 1) {
    try {
      const auto observations = to_observations(cleaned);
      const PageModel model = fit_page_classifier(observations, params.svm);
      out.predictions = predict_paragraph_pages(model, paragraphs);
    } catch (const FitError& e) {
      return fail(e.what());
    }
    solution.breaks =
        split_document(out.predictions, static_cast<int>(page_count));
  } else {
    out.predictions.assign(paragraphs.size(), 1);
  }

  // Coarse break positions in the serialized body.
  const std::u32string source = utf8_decode(serialize_markdown(body));
  std::vector<std::size_t> block_offsets;
  std::size_t offset = 0;
  for (const auto& p : paragraphs) {
    block_offsets.push_back(offset);
    offset += cp_length(p) + 2;
  }
  std::vector<std::u32string> page_text;
  for (const auto& lines : cleaned) {
    std::string joined;
    for (const auto& line : lines) {
      if (!joined.empty()) joined += ' ';
      joined += line;
    }
    page_text.push_back(utf8_decode(joined));
  }
  const std::size_t frag = params.refine.fragment_chars;
  for (std::size_t i = 0; i < solution.breaks.size(); ++i) {
    const std::u32string& prev = page_text[i];
    const std::u32string& next = page_text[i + 1];
    const std::u32string_view tail =
        std::u32string_view(prev).substr(prev.size() > frag ? prev.size() - frag : 0);
    const std::u32string_view head = std::u32string_view(next).substr(0, frag);
    RefinedBreak refined = refine_break(
        source, block_offsets[solution.breaks[i]], tail, head, params.refine);
    if (!solution.cuts.empty() && refined.position < solution.cuts.back()) {
      refined.position = solution.cuts.back();
      refined.score = 0.0;
    }
    solution.cuts.push_back(refined.position);
    solution.scores.push_back(refined.score);
  }
  solution = score_and_accept(std::move(solution));

  std::vector<MarkupDocument> pages = cut_pages(body, solution.cuts, page_count);
  std::vector<int> fallback;
  fallback.reserve(removed.size());
  for (const auto& r : removed) {
    // Body blocks that preceded the float in the original document.
    const std::size_t before = r.index - static_cast<std::size_t>(&r - removed.data());
    const auto page_of = std::upper_bound(solution.breaks.begin(),
                                          solution.breaks.end(), before) -
                         solution.breaks.begin();
    fallback.push_back(static_cast<int>(page_of) + 1);
  }
  pages = reinsert_floats(std::move(pages), removed, fallback, records,
                          params.float_distance_ratio);

  for (std::size_t p = 0; p < page_count; ++p) {
    out.pages.push_back({static_cast<int>(p) + 1, serialize_markdown(pages[p]),
                         solution.page_scores[p], static_cast<bool>(solution.accepted[p])});
  }
  out.solution = std::move(solution);
  return out;
}

}  // namespace docpair
