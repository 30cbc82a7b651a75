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

#include <charconv>
#include <string>
#include <string_view>
#include <unordered_map>

#include "docpair/markup.hpp"
#include "docpair/text.hpp"

namespace docpair {
namespace detail {
extern const std::string_view kUnicodeLatexTable;
}  // namespace detail

namespace {

struct SubstitutionTable {
  std::unordered_map<char32_t, std::string> entries;
  int version = 0;
};

SubstitutionTable load_table() {
  SubstitutionTable table;
  std::string_view data = detail::kUnicodeLatexTable;
  while (!data.empty()) {
    std::size_t end = data.find('\n');
    if (end == std::string_view::npos) end = data.size();
    std::string_view line = data.substr(0, end);
    data.remove_prefix(std::min(end + 1, data.size()));
    if (line.empty()) continue;
    if (line.front() == '#') {
      constexpr std::string_view kVersion = "# version: ";
      if (line.substr(0, kVersion.size()) == kVersion) {
        const auto digits = line.substr(kVersion.size());
        std::from_chars(digits.data(), digits.data() + digits.size(),
                        table.version);
      }
      continue;
    }
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos || line.substr(0, 2) != "U+") continue;
    unsigned long cp = 0;
    const auto hex = line.substr(2, tab - 2);
    std::from_chars(hex.data(), hex.data() + hex.size(), cp, 16);
    table.entries.emplace(static_cast<char32_t>(cp),
                          std::string(line.substr(tab + 1)));
  }
  return table;
}

const SubstitutionTable& table() {
  static const SubstitutionTable kTable = load_table();
  return kTable;
}

bool is_ascii_letter(char32_t c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

// `\alpha` style replacements need a separator before a following letter.
bool is_control_word(std::string_view rep) {
  if (rep.size() < 2 || rep.front() != '\\') return false;
  for (char c : rep.substr(1))
    if (!is_ascii_letter(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

std::string unicode_to_latex(std::string_view text) {
  const auto& entries = table().entries;
  const std::u32string cps = utf8_decode(text);
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const char32_t cp = cps[i];
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
      continue;
    }
    auto it = entries.find(cp);
    if (it == entries.end()) {
      utf8_append(out, cp);
      continue;
    }
    out += it->second;
    if (i + 1 < cps.size() && is_ascii_letter(cps[i + 1]) &&
        is_control_word(it->second))
      out.push_back(' ');
  }
  return out;
}

int unicode_table_version() { return table().version; }

std::size_t unicode_table_size() { return table().entries.size(); }

}  // namespace docpair
