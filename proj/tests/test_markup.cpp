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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "docpair/error.hpp"
#include "docpair/markup.hpp"
#include "docpair/text.hpp"
#include "generators.hpp"

using namespace docpair;

namespace {

InlineSpan plain(std::string t) { return {SpanKind::kPlain, std::move(t)}; }
InlineSpan bold(std::string t) { return {SpanKind::kBold, std::move(t)}; }
InlineSpan italic(std::string t) { return {SpanKind::kItalic, std::move(t)}; }
InlineSpan imath(std::string t) { return {SpanKind::kInlineMath, std::move(t)}; }

// Visible text of an HTML snippet: tags removed, whitespace collapsed.
std::string strip_tags(const std::string& html) {
  std::string out;
  bool in_tag = false;
  for (char c : html) {
    if (c == '<') {
      in_tag = true;
      out.push_back(' ');
    } else if (c == '>') {
      in_tag = false;
    } else if (!in_tag) {
      out.push_back(c);
    }
  }
  return normalize_whitespace(out);
}

}  // namespace

TEST_CASE("serialize block kinds") {
  MarkupDocument doc;
  doc.blocks.push_back(Block::heading(2, {plain("Intro")}));
  doc.blocks.push_back(
      Block::paragraph({plain("Let "), imath("x^2"), plain(" be "), bold("big"), plain(" and "),
                        italic("odd"), plain(".")}));
  doc.blocks.push_back(Block::display_math("E = mc^2"));
  doc.blocks.push_back(Block::table("\\begin{tabular}{l}\na \\\\\n\\end{tabular}"));
  doc.blocks.push_back(Block::caption({plain("A plot.")}));
  CHECK(serialize_markdown(doc) ==
        "## Intro\n\n"
        "Let \\(x^2\\) be **big** and _odd_.\n\n"
        "\\[\nE = mc^2\n\\]\n\n"
        "\\begin{table}\n\\begin{tabular}{l}\na \\\\\n\\end{tabular}\n\\end{table}\n\n"
        "Figure: A plot.");
}

TEST_CASE("serialize escapes markup characters") {
  CHECK(serialize_block(Block::paragraph({plain("a*b_c$d\\e")})) == "a\\*b\\_c\\$d\\\\e");
  CHECK(serialize_block(Block::paragraph({plain("#1 item")})) == "\\#1 item");
  CHECK(serialize_block(Block::paragraph({plain("Figure: not a caption")})) ==
        "Figure\\: not a caption");
}

TEST_CASE("empty document serializes to empty text") {
  CHECK(serialize_markdown(MarkupDocument{}) == "");
  CHECK(parse_markdown("").blocks.empty());
}

TEST_CASE("parse_markdown reads each block kind") {
  const auto doc = parse_markdown(
      "# Title\n\nSome **bold** and _it_ with \\(a+b\\).\n\n\\[\nx = 1\n\\]\n\n"
      "Figure: Caption here\n\n\\begin{algorithm}\n\\State x\n\\end{algorithm}");
  REQUIRE(doc.blocks.size() == 5);
  CHECK(doc.blocks[0] == Block::heading(1, {plain("Title")}));
  CHECK(doc.blocks[1] == Block::paragraph({plain("Some "), bold("bold"), plain(" and "),
                                           italic("it"), plain(" with "), imath("a+b"),
                                           plain(".")}));
  CHECK(doc.blocks[2] == Block::display_math("x = 1"));
  CHECK(doc.blocks[3] == Block::caption({plain("Caption here")}));
  CHECK(doc.blocks[4] == Block::algorithm("\\State x"));
}

TEST_CASE("parse_markdown accepts dollar math") {
  const auto doc = parse_markdown("Value $x$ here\n\n$$\ny\n$$");
  REQUIRE(doc.blocks.size() == 2);
  CHECK(doc.blocks[0] == Block::paragraph({plain("Value "), imath("x"), plain(" here")}));
  CHECK(doc.blocks[1] == Block::display_math("y"));
}

TEST_CASE("parse_markdown rejects unterminated verbatim blocks") {
  CHECK_THROWS_AS(parse_markdown("\\[\nx = 1"), ParseError);
  CHECK_THROWS_AS(parse_markdown("\\begin{table}\na"), ParseError);
}

TEST_CASE("round trip on random documents") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const MarkupDocument doc = gen::document(rng);
    const std::string text = serialize_markdown(doc);
    const MarkupDocument back = parse_markdown(text);
    REQUIRE_MESSAGE(back.blocks == doc.blocks, text);
    // Idempotence of the serialized form.
    CHECK(serialize_markdown(back) == text);
  }
}

TEST_CASE("html subset: headings, paragraphs, emphasis, entities") {
  const auto doc = parse_html_subset(
      "<html><head><title>skip me</title></head><body>"
      "<h2>Section &amp; more</h2>"
      "<p>Plain <b>bold</b> and <em>em</em>&nbsp;text &#955; &#x3B2;.</p>"
      "<script>var x = '<p>';</script>"
      "</body></html>");
  REQUIRE(doc.blocks.size() == 2);
  CHECK(doc.blocks[0] == Block::heading(2, {plain("Section & more")}));
  CHECK(doc.blocks[1] == Block::paragraph({plain("Plain "), bold("bold"), plain(" and "),
                                           italic("em"), plain(" text \xCE\xBB \xCE\xB2.")}));
}

TEST_CASE("html subset: math from alttext") {
  const auto doc = parse_html_subset(
      "<p>Let <math alttext=\"x^{2}\"><mi>x</mi></math> hold.</p>"
      "<p>Before <math display=\"block\" alttext=\"a=b\"><mi>a</mi></math> after</p>");
  REQUIRE(doc.blocks.size() == 4);
  CHECK(doc.blocks[0] == Block::paragraph({plain("Let "), imath("x^{2}"), plain(" hold.")}));
  CHECK(doc.blocks[1] == Block::paragraph({plain("Before")}));
  CHECK(doc.blocks[2] == Block::display_math("a=b"));
  CHECK(doc.blocks[3] == Block::paragraph({plain("after")}));
}

TEST_CASE("html subset: equation tables become display math") {
  const auto doc = parse_html_subset(
      "<table class=\"ltx_equation ltx_eqn_table\"><tr><td>"
      "<math display=\"block\" alttext=\"E=mc^{2}\"></math></td><td>(1)</td></tr></table>");
  REQUIRE(doc.blocks.size() == 1);
  CHECK(doc.blocks[0] == Block::display_math("E=mc^{2}"));
}

TEST_CASE("html subset: data tables and captions") {
  const auto doc = parse_html_subset(
      "<figure><table><tr><th>a</th><th>b</th></tr><tr><td>1</td><td>2</td></tr></table>"
      "<figcaption>Table 1: Numbers.</figcaption></figure>");
  REQUIRE(doc.blocks.size() == 2);
  CHECK(doc.blocks[0].kind == BlockKind::kTable);
  CHECK(doc.blocks[0].raw().find("a & b \\\\") != std::string::npos);
  CHECK(doc.blocks[0].raw().find("1 & 2 \\\\") != std::string::npos);
  CHECK(doc.blocks[1] == Block::caption({plain("Table 1: Numbers.")}));
}

TEST_CASE("html subset: malformed input raises ParseError with offset") {
  try {
    parse_html_subset("<p>ok</p></div>");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 9);
  }
  CHECK_THROWS_AS(parse_html_subset("<p class=\"x>text"), ParseError);
  CHECK_THROWS_AS(parse_html_subset("<!-- open comment"), ParseError);
  CHECK_THROWS_AS(parse_html_subset("<p"), ParseError);
}

TEST_CASE("html subset: unclosed elements close at end of input") {
  const auto doc = parse_html_subset("<p>one<p>two");
  REQUIRE(doc.blocks.size() == 2);
  CHECK(doc.blocks[0].text() == "one");
  CHECK(doc.blocks[1].text() == "two");
}

TEST_CASE("html subset preserves visible text of plain paragraphs") {
  std::mt19937_64 rng(5);
  const std::vector<std::string> words = {"alpha", "beta", "gamma", "delta", "x1", "y-2"};
  for (int trial = 0; trial < 100; ++trial) {
    std::string html;
    for (std::size_t p = 0, np = 1 + rng() % 4; p < np; ++p) {
      html += "<p>";
      for (std::size_t w = 0, nw = 1 + rng() % 8; w < nw; ++w) {
        const std::string& word = words[rng() % words.size()];
        switch (rng() % 3) {
          case 0:
            html += "<b>" + word + "</b>";
            break;
          case 1:
            html += "<i>" + word + "</i>";
            break;
          default:
            html += word;
        }
        html += " ";
      }
      html += "</p>\n";
    }
    const auto doc = parse_html_subset(html);
    std::string text;
    for (const auto& b : doc.blocks) text += b.text() + " ";
    CHECK(normalize_whitespace(text) == strip_tags(html));
  }
}

TEST_CASE("modality split on a mixed document") {
  const std::string markup =
      "Text \\(a\\) more $b$.\n\n\\[\nc\n\\]\n\n\\begin{table}\nT\n\\end{table}\n\nEnd";
  const auto s = split_modalities(markup);
  CHECK(s.math_pieces == std::vector<std::string>{"a", "b", "\nc\n"});
  CHECK(s.table_pieces == std::vector<std::string>{"\nT\n"});
  CHECK(normalize_whitespace(s.plain) == "Text more . End");
  CHECK(s.plain.size() + s.math.size() + s.tables.size() + s.delimiter_bytes == markup.size());
}

TEST_CASE("modality split rejects unbalanced delimiters") {
  CHECK_THROWS_AS(split_modalities("a \\( b"), ParseError);
  CHECK_THROWS_AS(split_modalities("a \\) b"), ParseError);
  CHECK_THROWS_AS(split_modalities("x $ y"), ParseError);
  CHECK_THROWS_AS(split_modalities("\\begin{table} x"), ParseError);
  CHECK_THROWS_AS(split_modalities("x \\end{table}"), ParseError);
  CHECK_NOTHROW(split_modalities("escaped \\$ dollar"));
}

TEST_CASE("modality split conserves bytes on random documents") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const std::string markup = serialize_markdown(gen::document(rng));
    const auto s = split_modalities(markup);
    CHECK(s.plain.size() + s.math.size() + s.tables.size() + s.delimiter_bytes ==
          markup.size());
  }
}

TEST_CASE("unicode to latex substitution") {
  CHECK(unicode_to_latex("plain ascii") == "plain ascii");
  CHECK(unicode_to_latex("\xCE\xB1") == "\\alpha");
  CHECK(unicode_to_latex("\xCE\xB1x") == "\\alpha x");
  CHECK(unicode_to_latex("\xCE\xB1+1") == "\\alpha+1");
  CHECK(unicode_to_latex("caf\xC3\xA9") == "caf\\'e");
  CHECK(unicode_to_latex("\xE2\x89\xA4") == "\\leq");
  CHECK(unicode_table_version() >= 1);
  CHECK(unicode_table_size() >= 500);
  // Unknown code points pass through.
  CHECK(unicode_to_latex("\xE4\xB8\xAD") == "\xE4\xB8\xAD");
}
