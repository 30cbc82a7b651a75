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
#include <string_view>
#include <vector>

namespace docpair {

enum class SpanKind { kPlain, kBold, kItalic, kInlineMath };

struct InlineSpan {
  SpanKind kind = SpanKind::kPlain;
  std::string text;  // inline math excludes its delimiters

  bool operator==(const InlineSpan&) const = default;
};

enum class BlockKind {
  kHeading,
  kParagraph,
  kDisplayMath,
  kTable,
  kFigureCaption,
  kAlgorithm,
};

/// One block of the lightweight markup. Verbatim blocks (display math,
/// table, algorithm) hold their raw LaTeX as a single plain span.
struct Block {
  BlockKind kind = BlockKind::kParagraph;
  int level = 0;  // heading level 1..6, 0 otherwise
  std::vector<InlineSpan> content;

  static Block heading(int level, std::vector<InlineSpan> spans);
  static Block paragraph(std::vector<InlineSpan> spans);
  static Block caption(std::vector<InlineSpan> spans);
  static Block display_math(std::string latex);
  static Block table(std::string latex);
  static Block algorithm(std::string latex);

  bool is_verbatim() const;
  bool is_float() const;
  /// Raw body of a verbatim block.
  const std::string& raw() const;
  /// Concatenated span texts without markup.
  std::string text() const;

  bool operator==(const Block&) const = default;
};

struct MarkupDocument {
  std::vector<Block> blocks;
  std::string source_id;
};

/// Parses the supported subset of LaTeXML-style HTML. Throws ParseError
/// on unrecoverable structure.
MarkupDocument parse_html_subset(std::string_view html,
                                 std::string source_id = {});

/// Markdown-with-LaTeX serialization; blocks are separated by one blank
/// line and the output has no trailing newline.
std::string serialize_markdown(const MarkupDocument& doc);
std::string serialize_block(const Block& block);

/// Reads the serialization grammar back. Also accepts `$...$` inline and
/// `$$...$$` display math.
MarkupDocument parse_markdown(std::string_view text,
                              std::string source_id = {});

/// Consecutive spans of the same kind merged, empty spans dropped.
std::vector<InlineSpan> canonical_spans(std::vector<InlineSpan> spans);

struct ModalitySlices {
  std::string plain;
  std::string math;    // bodies concatenated in order
  std::string tables;  // bodies concatenated in order
  std::vector<std::string> math_pieces;
  std::vector<std::string> table_pieces;
  std::size_t delimiter_bytes = 0;
};

/// Separates plain text, math bodies and table bodies. Throws ParseError
/// on an unbalanced math or table delimiter.
ModalitySlices split_modalities(std::string_view markup);

/// Replaces code points from the bundled substitution table by LaTeX
/// commands; everything else passes through.
std::string unicode_to_latex(std::string_view text);

/// Version tag of the bundled substitution table.
int unicode_table_version();
std::size_t unicode_table_size();

}  // namespace docpair
