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

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "docpair/error.hpp"
#include "docpair/markup.hpp"
#include "docpair/text.hpp"

namespace docpair {
namespace {

struct Attribute {
  std::string name;
  std::string value;
};

struct Tag {
  std::string name;  // lowercase
  std::vector<Attribute> attributes;
  bool closing = false;
  bool self_closing = false;
  std::size_t offset = 0;

  std::optional<std::string> attribute(std::string_view key) const {
    for (const auto& a : attributes)
      if (a.name == key) return a.value;
    return std::nullopt;
  }
};

bool is_void_element(std::string_view name) {
  static constexpr std::string_view kVoid[] = {
      "area", "base",  "br",   "col",  "embed",  "hr",    "img",
      "input", "link", "meta", "param", "source", "track", "wbr"};
  return std::find(std::begin(kVoid), std::end(kVoid), name) !=
         std::end(kVoid);
}

bool is_container(std::string_view name) {
  static constexpr std::string_view kContainers[] = {
      "address", "article", "aside",  "blockquote", "body",   "dd",
      "div",     "dl",      "dt",     "figure",     "footer", "header",
      "html",    "li",      "main",   "nav",        "ol",     "pre",
      "section", "ul",      "center", "details",    "summary"};
  return std::find(std::begin(kContainers), std::end(kContainers), name) !=
         std::end(kContainers);
}

bool is_skipped(std::string_view name) {
  return name == "head" || name == "script" || name == "style" ||
         name == "title" || name == "template" || name == "noscript";
}

int heading_tag_level(std::string_view name) {
  if (name.size() == 2 && name[0] == 'h' && name[1] >= '1' && name[1] <= '6')
    return name[1] - '0';
  return 0;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string decode_entities(std::string_view text) {
  static const std::unordered_map<std::string_view, char32_t> kNamed = {
      {"amp", '&'},        {"lt", '<'},         {"gt", '>'},
      {"quot", '"'},       {"apos", '\''},      {"nbsp", ' '},
      {"ndash", 0x2013},   {"mdash", 0x2014},   {"hellip", 0x2026},
      {"times", 0x00D7},   {"minus", 0x2212},   {"copy", 0x00A9},
      {"reg", 0x00AE},     {"laquo", 0x00AB},   {"raquo", 0x00BB},
      {"lsquo", 0x2018},   {"rsquo", 0x2019},   {"ldquo", 0x201C},
      {"rdquo", 0x201D},   {"thinsp", 0x2009},  {"deg", 0x00B0},
      {"plusmn", 0x00B1},  {"middot", 0x00B7},  {"sect", 0x00A7}};
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '&') {
      out.push_back(text[i++]);
      continue;
    }
    const std::size_t semi = text.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out.push_back(text[i++]);
      continue;
    }
    const std::string_view name = text.substr(i + 1, semi - i - 1);
    std::optional<char32_t> cp;
    if (!name.empty() && name[0] == '#') {
      const bool hex = name.size() > 1 && (name[1] == 'x' || name[1] == 'X');
      const std::string_view digits = name.substr(hex ? 2 : 1);
      if (!digits.empty()) {
        char32_t value = 0;
        bool ok = true;
        for (char d : digits) {
          int v;
          if (d >= '0' && d <= '9') {
            v = d - '0';
          } else if (hex && d >= 'a' && d <= 'f') {
            v = d - 'a' + 10;
          } else if (hex && d >= 'A' && d <= 'F') {
            v = d - 'A' + 10;
          } else {
            ok = false;
            break;
          }
          value = value * (hex ? 16 : 10) + static_cast<char32_t>(v);
          if (value > 0x10FFFF) {
            ok = false;
            break;
          }
        }
        if (ok) cp = value;
      }
    } else if (auto it = kNamed.find(name); it != kNamed.end()) {
      cp = it->second;
    }
    if (!cp) {
      out.push_back(text[i++]);
      continue;
    }
    utf8_append(out, *cp);
    i = semi + 1;
  }
  return out;
}

std::string collapse_spaces(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool space = false;
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f') {
      if (!space) out.push_back(' ');
      space = true;
    } else {
      out.push_back(c);
      space = false;
    }
  }
  return out;
}

// Turns the token stream into blocks.
class DocumentBuilder {
 public:
  explicit DocumentBuilder(MarkupDocument& doc) : doc_(doc) {}

  void text(std::string_view raw) {
    if (skip_depth_ > 0 || math_depth_ > 0) return;
    std::string value = collapse_spaces(decode_entities(raw));
    if (table_) {
      if (equation_table_) return;  // equation numbers
      if (!table_->rows.empty() && table_->cell_open)
        table_->rows.back().back() += value;
      return;
    }
    if (!open_ && value.find_first_not_of(' ') == std::string::npos) return;
    ensure_inline_block();
    spans_.push_back({current_style(), std::move(value)});
  }

  void start(const Tag& tag) {
    const std::string& name = tag.name;
    if (skip_depth_ > 0) {
      if (is_skipped(name) && !tag.self_closing) ++skip_depth_;
      return;
    }
    if (math_depth_ > 0) {
      if (name == "math" && !tag.self_closing) ++math_depth_;
      return;
    }
    if (is_skipped(name)) {
      if (!tag.self_closing) skip_depth_ = 1;
      return;
    }
    if (name == "math") {
      math(tag);
      if (!tag.self_closing) math_depth_ = 1;
      return;
    }
    if (table_) {
      table_structure(tag);
      return;
    }
    if (name == "br") {
      if (open_) spans_.push_back({current_style(), " "});
      return;
    }
    if (const int level = heading_tag_level(name); level > 0) {
      if (in_caption_or_heading()) return;
      close_block();
      open_block(BlockKind::kHeading, level);
      return;
    }
    if (name == "p") {
      if (in_caption_or_heading()) return;
      close_block();
      open_block(BlockKind::kParagraph, 0);
      return;
    }
    if (name == "figcaption") {
      close_block();
      open_block(BlockKind::kFigureCaption, 0);
      return;
    }
    if (name == "b" || name == "strong") {
      ++bold_;
      return;
    }
    if (name == "i" || name == "em") {
      ++italic_;
      return;
    }
    if (name == "table") {
      close_block();
      table_.emplace();
      const auto cls = tag.attribute("class").value_or("");
      equation_table_ = cls.find("ltx_equation") != std::string::npos;
      return;
    }
    if (is_container(name) && !in_caption_or_heading()) close_implicit();
  }

  void end(std::string_view name) {
    if (skip_depth_ > 0) {
      if (is_skipped(name)) --skip_depth_;
      return;
    }
    if (name == "math") {
      if (math_depth_ > 0) --math_depth_;
      return;
    }
    if (math_depth_ > 0) return;
    if (table_) {
      if (name == "table") {
        finish_table();
      } else if (name == "td" || name == "th") {
        table_->cell_open = false;
      }
      return;
    }
    if (heading_tag_level(name) > 0 || name == "p" || name == "figcaption") {
      if (open_ && open_kind_ == tag_kind(name)) close_block();
      return;
    }
    if (name == "b" || name == "strong") {
      bold_ = std::max(0, bold_ - 1);
      return;
    }
    if (name == "i" || name == "em") {
      italic_ = std::max(0, italic_ - 1);
      return;
    }
    if (is_container(name) && !in_caption_or_heading()) close_implicit();
  }

  void finish() {
    if (table_) finish_table();
    close_block();
  }

 private:
  struct TableState {
    std::vector<std::vector<std::string>> rows;
    bool cell_open = false;
  };

  static BlockKind tag_kind(std::string_view name) {
    if (name == "p") return BlockKind::kParagraph;
    if (name == "figcaption") return BlockKind::kFigureCaption;
    return BlockKind::kHeading;
  }

  SpanKind current_style() const {
    if (bold_ > 0) return SpanKind::kBold;
    if (italic_ > 0) return SpanKind::kItalic;
    return SpanKind::kPlain;
  }

  bool in_caption_or_heading() const {
    return open_ && (open_kind_ == BlockKind::kHeading ||
                     open_kind_ == BlockKind::kFigureCaption);
  }

  void open_block(BlockKind kind, int level) {
    open_ = true;
    implicit_ = false;
    open_kind_ = kind;
    open_level_ = level;
    spans_.clear();
  }

  void ensure_inline_block() {
    if (open_) return;
    open_block(BlockKind::kParagraph, 0);
    implicit_ = true;
  }

  void close_implicit() {
    if (open_ && implicit_) close_block();
  }

  void close_block() {
    if (!open_) return;
    open_ = false;
    auto spans = canonical_spans(std::move(spans_));
    spans_.clear();
    // Trim the outer whitespace of the block.
    while (!spans.empty()) {
      auto& first = spans.front().text;
      const auto pos = first.find_first_not_of(' ');
      if (spans.front().kind == SpanKind::kInlineMath) break;
      if (pos == std::string::npos) {
        spans.erase(spans.begin());
        continue;
      }
      first.erase(0, pos);
      break;
    }
    while (!spans.empty()) {
      auto& last = spans.back().text;
      if (spans.back().kind == SpanKind::kInlineMath) break;
      const auto pos = last.find_last_not_of(' ');
      if (pos == std::string::npos) {
        spans.pop_back();
        continue;
      }
      last.erase(pos + 1);
      break;
    }
    if (spans.empty() && open_kind_ == BlockKind::kParagraph) return;
    switch (open_kind_) {
      case BlockKind::kHeading:
        doc_.blocks.push_back(Block::heading(open_level_, std::move(spans)));
        break;
      case BlockKind::kFigureCaption:
        doc_.blocks.push_back(Block::caption(std::move(spans)));
        break;
      default:
        doc_.blocks.push_back(Block::paragraph(std::move(spans)));
        break;
    }
  }

  void math(const Tag& tag) {
    std::string latex = tag.attribute("alttext").value_or("");
    const bool block = tag.attribute("display").value_or("") == "block";
    if (table_) {
      if (equation_table_) {
        doc_.blocks.push_back(Block::display_math(std::move(latex)));
      } else if (!table_->rows.empty() && table_->cell_open) {
        table_->rows.back().back() += "$" + latex + "$";
      }
      return;
    }
    if (block && !in_caption_or_heading()) {
      const bool was_open = open_;
      const BlockKind kind = open_kind_;
      close_block();
      doc_.blocks.push_back(Block::display_math(std::move(latex)));
      // Text after the equation continues as a new block of the same kind.
      if (was_open) {
        open_block(kind, 0);
        implicit_ = true;
      }
      return;
    }
    ensure_inline_block();
    spans_.push_back({SpanKind::kInlineMath, std::move(latex)});
  }

  void table_structure(const Tag& tag) {
    if (equation_table_) return;
    if (tag.name == "tr") {
      table_->rows.emplace_back();
      table_->cell_open = false;
    } else if (tag.name == "td" || tag.name == "th") {
      if (table_->rows.empty()) table_->rows.emplace_back();
      table_->rows.back().emplace_back();
      table_->cell_open = true;
    } else if (tag.name == "br" && table_->cell_open) {
      table_->rows.back().back() += ' ';
    }
  }

  void finish_table() {
    TableState state = std::move(*table_);
    table_.reset();
    if (equation_table_) {
      equation_table_ = false;
      return;
    }
    std::size_t columns = 0;
    for (const auto& row : state.rows) columns = std::max(columns, row.size());
    if (columns == 0) return;
    std::string latex = "\\begin{tabular}{" + std::string(columns, 'l') + "}";
    for (const auto& row : state.rows) {
      if (row.empty()) continue;
      latex += '\n';
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c > 0) latex += " & ";
        latex += normalize_whitespace(row[c]);
      }
      latex += " \\\\";
    }
    latex += "\n\\end{tabular}";
    doc_.blocks.push_back(Block::table(std::move(latex)));
  }

  MarkupDocument& doc_;
  bool open_ = false;
  bool implicit_ = false;
  BlockKind open_kind_ = BlockKind::kParagraph;
  int open_level_ = 0;
  std::vector<InlineSpan> spans_;
  int bold_ = 0;
  int italic_ = 0;
  int skip_depth_ = 0;
  int math_depth_ = 0;
  std::optional<TableState> table_;
  bool equation_table_ = false;
};

class HtmlReader {
 public:
  HtmlReader(std::string_view html, DocumentBuilder& builder)
      : html_(html), builder_(builder) {}

  void run() {
    std::size_t text_start = 0;
    while (pos_ < html_.size()) {
      if (html_[pos_] != '<') {
        ++pos_;
        continue;
      }
      const std::size_t lt = pos_;
      if (lt + 1 >= html_.size()) break;
      const char next = html_[lt + 1];
      const bool markup = std::isalpha(static_cast<unsigned char>(next)) ||
                          next == '/' || next == '!' || next == '?';
      if (!markup) {
        ++pos_;
        continue;
      }
      flush_text(text_start, lt);
      if (html_.substr(lt, 4) == "<!--") {
        const std::size_t end = html_.find("-->", lt + 4);
        if (end == std::string_view::npos)
          throw ParseError("unterminated comment", lt);
        pos_ = end + 3;
      } else if (next == '!' || next == '?') {
        const std::size_t end = html_.find('>', lt);
        if (end == std::string_view::npos)
          throw ParseError("unterminated declaration", lt);
        pos_ = end + 1;
      } else {
        Tag tag = read_tag(lt);
        handle(tag);
      }
      text_start = pos_;
    }
    flush_text(text_start, html_.size());
    while (!stack_.empty()) {
      builder_.end(stack_.back());
      stack_.pop_back();
    }
    builder_.finish();
  }

 private:
  void flush_text(std::size_t begin, std::size_t end) {
    if (end > begin) builder_.text(html_.substr(begin, end - begin));
  }

  Tag read_tag(std::size_t lt) {
    Tag tag;
    tag.offset = lt;
    std::size_t i = lt + 1;
    if (html_[i] == '/') {
      tag.closing = true;
      ++i;
    }
    const std::size_t name_start = i;
    while (i < html_.size() && !std::isspace(static_cast<unsigned char>(html_[i])) &&
           html_[i] != '>' && html_[i] != '/')
      ++i;
    tag.name = lower(html_.substr(name_start, i - name_start));
    if (tag.name.empty()) throw ParseError("empty tag name", lt);

    while (true) {
      while (i < html_.size() && std::isspace(static_cast<unsigned char>(html_[i]))) ++i;
      if (i >= html_.size()) throw ParseError("unterminated tag <" + tag.name, lt);
      if (html_[i] == '>') {
        ++i;
        break;
      }
      if (html_[i] == '/') {
        tag.self_closing = true;
        ++i;
        continue;
      }
      const std::size_t attr_start = i;
      while (i < html_.size() && !std::isspace(static_cast<unsigned char>(html_[i])) &&
             html_[i] != '=' && html_[i] != '>' && html_[i] != '/')
        ++i;
      Attribute attr{lower(html_.substr(attr_start, i - attr_start)), {}};
      while (i < html_.size() && std::isspace(static_cast<unsigned char>(html_[i]))) ++i;
      if (i < html_.size() && html_[i] == '=') {
        ++i;
        while (i < html_.size() && std::isspace(static_cast<unsigned char>(html_[i]))) ++i;
        if (i >= html_.size()) throw ParseError("unterminated tag <" + tag.name, lt);
        if (html_[i] == '"' || html_[i] == '\'') {
          const char quote = html_[i];
          const std::size_t end = html_.find(quote, i + 1);
          if (end == std::string_view::npos)
            throw ParseError("unterminated attribute value", i);
          attr.value = decode_entities(html_.substr(i + 1, end - i - 1));
          i = end + 1;
        } else {
          const std::size_t v = i;
          while (i < html_.size() && !std::isspace(static_cast<unsigned char>(html_[i])) &&
                 html_[i] != '>')
            ++i;
          attr.value = decode_entities(html_.substr(v, i - v));
        }
      }
      if (!attr.name.empty()) tag.attributes.push_back(std::move(attr));
    }
    pos_ = i;
    return tag;
  }

  void handle(const Tag& tag) {
    if (tag.closing) {
      if (is_void_element(tag.name)) return;
      auto it = std::find(stack_.rbegin(), stack_.rend(), tag.name);
      if (it == stack_.rend())
        throw ParseError("unbalanced end tag </" + tag.name + ">", tag.offset);
      // Implicitly close everything opened after the matching element.
      const std::size_t keep = static_cast<std::size_t>(stack_.rend() - it) - 1;
      while (stack_.size() > keep) {
        builder_.end(stack_.back());
        stack_.pop_back();
      }
      return;
    }
    // A new paragraph-level element closes an open <p>.
    if (tag.name == "p" || heading_tag_level(tag.name) > 0 ||
        tag.name == "table" || tag.name == "figure" || tag.name == "div" ||
        tag.name == "figcaption") {
      auto it = std::find(stack_.rbegin(), stack_.rend(), std::string("p"));
      const bool inside_cell =
          std::find(stack_.rbegin(), it, std::string("td")) != it ||
          std::find(stack_.rbegin(), it, std::string("th")) != it;
      if (it != stack_.rend() && !inside_cell) {
        const std::size_t keep =
            static_cast<std::size_t>(stack_.rend() - it) - 1;
        while (stack_.size() > keep) {
          builder_.end(stack_.back());
          stack_.pop_back();
        }
      }
    }
    const bool raw_text = tag.name == "script" || tag.name == "style";
    builder_.start(tag);
    if (tag.self_closing || is_void_element(tag.name)) return;
    stack_.push_back(tag.name);
    if (raw_text) {
      const std::string close = "</" + tag.name;
      std::size_t end = pos_;
      while (true) {
        end = html_.find('<', end);
        if (end == std::string_view::npos)
          throw ParseError("unterminated <" + tag.name + ">", tag.offset);
        if (lower(html_.substr(end, close.size())) == close) break;
        ++end;
      }
      pos_ = end;
    }
  }

  std::string_view html_;
  DocumentBuilder& builder_;
  std::size_t pos_ = 0;
  std::vector<std::string> stack_;
};

}  // namespace

MarkupDocument parse_html_subset(std::string_view html,
                                 std::string source_id) {
  MarkupDocument doc;
  doc.source_id = std::move(source_id);
  DocumentBuilder builder(doc);
  HtmlReader(html, builder).run();
  return doc;
}

}  // namespace docpair
