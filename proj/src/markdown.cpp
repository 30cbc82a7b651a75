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

#include <string>
#include <string_view>
#include <vector>

#include "docpair/error.hpp"
#include "docpair/markup.hpp"

namespace docpair {
namespace {

constexpr std::string_view kCaptionPrefix = "Figure:";

void append_escaped(std::string& out, std::string_view text) {
  for (char c : text) {
    switch (c) {
      case '\\':
      case '*':
      case '_':
      case '$':
        out.push_back('\\');
        out.push_back(c);
        break;
      case '\n':
      case '\r':
        out.push_back(' ');
        break;
      default:
        out.push_back(c);
    }
  }
}

void append_spans(std::string& out, const std::vector<InlineSpan>& spans,
                  bool paragraph_start) {
  const std::size_t start = out.size();
  for (const auto& span : spans) {
    switch (span.kind) {
      case SpanKind::kPlain:
        append_escaped(out, span.text);
        break;
      case SpanKind::kBold:
        out += "**";
        append_escaped(out, span.text);
        out += "**";
        break;
      case SpanKind::kItalic:
        out += "_";
        append_escaped(out, span.text);
        out += "_";
        break;
      case SpanKind::kInlineMath:
        out += "\\(";
        out += span.text;
        out += "\\)";
        break;
    }
  }
  if (!paragraph_start) return;
  // A paragraph must not read back as a heading or a caption.
  std::string_view body(out);
  body.remove_prefix(start);
  if (!body.empty() && body.front() == '#') {
    out.insert(start, "\\");
  } else if (body.substr(0, kCaptionPrefix.size()) == kCaptionPrefix) {
    out.insert(start + kCaptionPrefix.size() - 1, "\\");
  }
}

void append_verbatim(std::string& out, std::string_view open,
                     std::string_view body, std::string_view close) {
  out += open;
  out += '\n';
  out += body;
  out += '\n';
  out += close;
}

}  // namespace

std::string serialize_block(const Block& block) {
  std::string out;
  switch (block.kind) {
    case BlockKind::kHeading:
      out.append(static_cast<std::size_t>(block.level), '#');
      out += ' ';
      append_spans(out, block.content, false);
      break;
    case BlockKind::kParagraph:
      append_spans(out, block.content, true);
      break;
    case BlockKind::kFigureCaption:
      out += kCaptionPrefix;
      out += ' ';
      append_spans(out, block.content, false);
      break;
    case BlockKind::kDisplayMath:
      append_verbatim(out, "\\[", block.raw(), "\\]");
      break;
    case BlockKind::kTable:
      append_verbatim(out, "\\begin{table}", block.raw(), "\\end{table}");
      break;
    case BlockKind::kAlgorithm:
      append_verbatim(out, "\\begin{algorithm}", block.raw(),
                      "\\end{algorithm}");
      break;
  }
  return out;
}

std::string serialize_markdown(const MarkupDocument& doc) {
  std::string out;
  for (const auto& block : doc.blocks) {
    if (!out.empty()) out += "\n\n";
    out += serialize_block(block);
  }
  return out;
}

namespace {

bool is_escapable(char c) {
  return c != '(' && c != ')' && c != '[' && c != ']' &&
         ((c >= '!' && c <= '/') || (c >= ':' && c <= '@') ||
          (c >= '[' && c <= '`') || (c >= '{' && c <= '~'));
}

// Position of the next unescaped occurrence of `delim`, or npos.
std::size_t find_unescaped(std::string_view text, std::size_t pos,
                           std::string_view delim) {
  while (pos < text.size()) {
    if (text.substr(pos, delim.size()) == delim) return pos;
    pos += text[pos] == '\\' && pos + 1 < text.size() ? 2 : 1;
  }
  return std::string_view::npos;
}

std::string unescape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\\' && i + 1 < text.size() && is_escapable(text[i + 1])) {
      out.push_back(text[++i]);
    } else {
      out.push_back(text[i]);
    }
  }
  return out;
}

std::vector<InlineSpan> parse_inline(std::string_view text) {
  std::vector<InlineSpan> spans;
  std::string plain;
  auto flush_plain = [&] {
    if (!plain.empty()) spans.push_back({SpanKind::kPlain, std::move(plain)});
    plain.clear();
  };
  auto push = [&](SpanKind kind, std::string body) {
    flush_plain();
    spans.push_back({kind, std::move(body)});
  };

  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\\' && i + 1 < text.size()) {
      const char next = text[i + 1];
      if (next == '(') {
        const std::size_t end = find_unescaped(text, i + 2, "\\)");
        if (end != std::string_view::npos) {
          push(SpanKind::kInlineMath, std::string(text.substr(i + 2, end - i - 2)));
          i = end + 2;
          continue;
        }
      } else if (is_escapable(next)) {
        plain.push_back(next);
        i += 2;
        continue;
      }
      plain.push_back(c);
      ++i;
      continue;
    }
    if (c == '*' && text.substr(i, 2) == "**") {
      const std::size_t end = find_unescaped(text, i + 2, "**");
      if (end != std::string_view::npos) {
        push(SpanKind::kBold, unescape(text.substr(i + 2, end - i - 2)));
        i = end + 2;
        continue;
      }
    } else if (c == '_') {
      const std::size_t end = find_unescaped(text, i + 1, "_");
      if (end != std::string_view::npos) {
        push(SpanKind::kItalic, unescape(text.substr(i + 1, end - i - 1)));
        i = end + 1;
        continue;
      }
    } else if (c == '$') {
      const std::size_t end = find_unescaped(text, i + 1, "$");
      if (end != std::string_view::npos && end > i + 1) {
        push(SpanKind::kInlineMath, std::string(text.substr(i + 1, end - i - 1)));
        i = end + 1;
        continue;
      }
    }
    plain.push_back(c);
    ++i;
  }
  flush_plain();
  return canonical_spans(std::move(spans));
}

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

int heading_level(std::string_view line) {
  int level = 0;
  while (level < static_cast<int>(line.size()) && line[level] == '#') ++level;
  if (level < 1 || level > 6) return 0;
  if (static_cast<std::size_t>(level) >= line.size() || line[level] != ' ')
    return 0;
  return level;
}

}  // namespace

MarkupDocument parse_markdown(std::string_view text, std::string source_id) {
  // Split into lines, remembering byte offsets for diagnostics.
  std::vector<std::string_view> lines;
  std::vector<std::size_t> offsets;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    offsets.push_back(pos);
    pos = end + 1;
  }

  MarkupDocument doc;
  doc.source_id = std::move(source_id);
  std::size_t i = 0;
  auto read_verbatim = [&](std::string_view close) {
    const std::size_t open_line = i;
    std::string body;
    bool first = true;
    for (++i; i < lines.size(); ++i) {
      if (lines[i] == close) {
        ++i;
        return body;
      }
      if (!first) body += '\n';
      body += lines[i];
      first = false;
    }
    throw ParseError("unterminated verbatim block", offsets[open_line]);
  };

  while (i < lines.size()) {
    const std::string_view line = lines[i];
    if (is_blank(line)) {
      ++i;
      continue;
    }
    if (line == "\\[") {
      doc.blocks.push_back(Block::display_math(read_verbatim("\\]")));
      continue;
    }
    if (line == "$$") {
      doc.blocks.push_back(Block::display_math(read_verbatim("$$")));
      continue;
    }
    if (line == "\\begin{table}") {
      doc.blocks.push_back(Block::table(read_verbatim("\\end{table}")));
      continue;
    }
    if (line == "\\begin{algorithm}") {
      doc.blocks.push_back(
          Block::algorithm(read_verbatim("\\end{algorithm}")));
      continue;
    }
    if (const int level = heading_level(line); level > 0) {
      doc.blocks.push_back(
          Block::heading(level, parse_inline(line.substr(level + 1))));
      ++i;
      continue;
    }
    std::string para(line);
    for (++i; i < lines.size() && !is_blank(lines[i]); ++i) {
      para += '\n';
      para += lines[i];
    }
    std::string_view body(para);
    if (body.substr(0, kCaptionPrefix.size()) == kCaptionPrefix) {
      body.remove_prefix(kCaptionPrefix.size());
      if (!body.empty() && body.front() == ' ') body.remove_prefix(1);
      doc.blocks.push_back(Block::caption(parse_inline(body)));
    } else {
      doc.blocks.push_back(Block::paragraph(parse_inline(body)));
    }
  }
  return doc;
}

}  // namespace docpair
