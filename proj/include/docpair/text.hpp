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
#include <string>
#include <string_view>
#include <vector>

namespace docpair {

// UTF-8 <-> code points. Invalid sequences decode to U+FFFD.
std::u32string utf8_decode(std::string_view text);
std::string utf8_encode(std::u32string_view text);
void utf8_append(std::string& out, char32_t cp);

/// Trims both ends and collapses every whitespace run to one space.
std::string normalize_whitespace(std::string_view text);

std::vector<std::string> split_whitespace(std::string_view text);

/// Levenshtein distance with unit costs.
std::size_t levenshtein(std::u32string_view a, std::u32string_view b);

/// Levenshtein distance divided by the longer length; 0 for two empty
/// strings.
double normalized_levenshtein(std::u32string_view a, std::u32string_view b);

struct FuzzyMatch {
  std::size_t begin = 0;  // first matched position in the haystack
  std::size_t end = 0;    // one past the last matched position
  std::size_t distance = 0;
};

enum class MatchAnchor { kBegin, kEnd };

/// Approximate substring search: the occurrence of `pattern` inside
/// `haystack` with the smallest edit distance not exceeding
/// `max_distance`. Among equally distant occurrences the one whose
/// `anchor` side lies closest to `target` wins, then the earliest.
std::optional<FuzzyMatch> fuzzy_find(std::u32string_view haystack,
                                     std::u32string_view pattern,
                                     std::size_t max_distance,
                                     MatchAnchor anchor, std::size_t target);

}  // namespace docpair
