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

#include "docpair/markup.hpp"

#include <string>

#include "docpair/error.hpp"

namespace docpair {

Block Block::heading(int level, std::vector<InlineSpan> spans) {
  return Block{BlockKind::kHeading, level, canonical_spans(std::move(spans))};
}

Block Block::paragraph(std::vector<InlineSpan> spans) {
  return Block{BlockKind::kParagraph, 0, canonical_spans(std::move(spans))};
}

Block Block::caption(std::vector<InlineSpan> spans) {
  return Block{BlockKind::kFigureCaption, 0,
               canonical_spans(std::move(spans))};
}

Block Block::display_math(std::string latex) {
  return Block{BlockKind::kDisplayMath, 0,
               {InlineSpan{SpanKind::kPlain, std::move(latex)}}};
}

Block Block::table(std::string latex) {
  return Block{BlockKind::kTable, 0,
               {InlineSpan{SpanKind::kPlain, std::move(latex)}}};
}

Block Block::algorithm(std::string latex) {
  return Block{BlockKind::kAlgorithm, 0,
               {InlineSpan{SpanKind::kPlain, std::move(latex)}}};
}

bool Block::is_verbatim() const {
  return kind == BlockKind::kDisplayMath || kind == BlockKind::kTable ||
         kind == BlockKind::kAlgorithm;
}

bool Block::is_float() const {
  return kind == BlockKind::kTable || kind == BlockKind::kFigureCaption;
}

const std::string& Block::raw() const {
  static const std::string kEmpty;
  return content.empty() ? kEmpty : content.front().text;
}

std::string Block::text() const {
  std::string out;
  for (const auto& span : content) out += span.text;
  return out;
}

std::vector<InlineSpan> canonical_spans(std::vector<InlineSpan> spans) {
  std::vector<InlineSpan> out;
  out.reserve(spans.size());
  for (auto& span : spans) {
    if (span.text.empty()) continue;
    if (!out.empty() && out.back().kind == span.kind &&
        span.kind != SpanKind::kInlineMath) {
      out.back().text += span.text;
    } else {
      out.push_back(std::move(span));
    }
  }
  return out;
}

namespace {

bool starts_with_at(std::string_view text, std::size_t pos,
                    std::string_view prefix) {
  return text.substr(pos, prefix.size()) == prefix;
}

// Index of the closing delimiter of a math body starting at `pos`,
// skipping backslash pairs. npos when absent.
std::size_t find_math_close(std::string_view text, std::size_t pos,
                            std::string_view close) {
  while (pos < text.size()) {
    if (starts_with_at(text, pos, close)) return pos;
    if (text[pos] == '\\' && pos + 1 < text.size()) {
      pos += 2;
    } else {
      ++pos;
    }
  }
  return std::string_view::npos;
}

}  // namespace

ModalitySlices split_modalities(std::string_view markup) {
  constexpr std::string_view kTableOpen = "\\begin{table}";
  constexpr std::string_view kTableClose = "\\end{table}";
  constexpr std::string_view kAlgorithmOpen = "\\begin{algorithm}";
  constexpr std::string_view kAlgorithmClose = "\\end{algorithm}";

  ModalitySlices out;
  std::size_t i = 0;
  auto take_math = [&](std::size_t open_len, std::string_view close) {
    const std::size_t body = i + open_len;
    const std::size_t end = find_math_close(markup, body, close);
    if (end == std::string_view::npos)
      throw ParseError("unbalanced math delimiter", i);
    std::string piece(markup.substr(body, end - body));
    out.math += piece;
    out.math_pieces.push_back(std::move(piece));
    out.delimiter_bytes += open_len + close.size();
    i = end + close.size();
  };

  while (i < markup.size()) {
    const char c = markup[i];
    if (c == '\\' && i + 1 < markup.size()) {
      const char next = markup[i + 1];
      if (next == '(') {
        take_math(2, "\\)");
        continue;
      }
      if (next == '[') {
        take_math(2, "\\]");
        continue;
      }
      if (next == ')' || next == ']')
        throw ParseError("unbalanced math delimiter", i);
      if (starts_with_at(markup, i, kTableOpen)) {
        const std::size_t body = i + kTableOpen.size();
        const std::size_t end = markup.find(kTableClose, body);
        if (end == std::string_view::npos)
          throw ParseError("unterminated table", i);
        std::string piece(markup.substr(body, end - body));
        out.tables += piece;
        out.table_pieces.push_back(std::move(piece));
        out.delimiter_bytes += kTableOpen.size() + kTableClose.size();
        i = end + kTableClose.size();
        continue;
      }
      if (starts_with_at(markup, i, kAlgorithmOpen)) {
        // Verbatim algorithm bodies stay in plain, delimiters included.
        std::size_t end = markup.find(kAlgorithmClose, i + kAlgorithmOpen.size());
        end = end == std::string_view::npos ? markup.size() : end + kAlgorithmClose.size();
        out.plain.append(markup.substr(i, end - i));
        i = end;
        continue;
      }
      if (starts_with_at(markup, i, kTableClose))
        throw ParseError("unbalanced table delimiter", i);
      out.plain.append(markup.substr(i, 2));
      i += 2;
      continue;
    }
    if (c == '$') {
      if (starts_with_at(markup, i, "$$")) {
        take_math(2, "$$");
      } else {
        take_math(1, "$");
      }
      continue;
    }
    out.plain.push_back(c);
    ++i;
  }
  return out;
}

}  // namespace docpair
