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

#include "docpair/text.hpp"
#include "oracles.hpp"

using namespace docpair;

TEST_CASE("utf8 round trip and invalid bytes") {
  const std::string text = "caf\xC3\xA9 \xE2\x88\x91 \xF0\x9F\x98\x80";
  const auto cps = utf8_decode(text);
  CHECK(cps.size() == 8);
  CHECK(cps[3] == U'é');
  CHECK(utf8_encode(cps) == text);
  CHECK(utf8_decode("\xFF")[0] == U'�');
  CHECK(utf8_decode("a\xC3")[1] == U'�');
}

TEST_CASE("whitespace normalization") {
  CHECK(normalize_whitespace("  a \t b\n\nc  ") == "a b c");
  CHECK(normalize_whitespace("") == "");
  CHECK(normalize_whitespace(" \n ") == "");
  CHECK(split_whitespace(" x  y ") == std::vector<std::string>{"x", "y"});
}

TEST_CASE("levenshtein spot values") {
  CHECK(levenshtein(U"kitten", U"sitting") == 3);
  CHECK(levenshtein(U"", U"abc") == 3);
  CHECK(levenshtein(U"abc", U"abc") == 0);
  CHECK(normalized_levenshtein(U"kitten", U"sitting") == doctest::Approx(3.0 / 7.0));
  CHECK(normalized_levenshtein(U"", U"") == 0.0);
  CHECK(normalized_levenshtein(U"", U"abc") == 1.0);
}

TEST_CASE("levenshtein matches the full-matrix oracle on random strings") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    std::u32string a;
    std::u32string b;
    const std::size_t la = rng() % 20;
    const std::size_t lb = rng() % 20;
    for (std::size_t k = 0; k < la; ++k) a.push_back(U'a' + static_cast<char32_t>(rng() % 4));
    for (std::size_t k = 0; k < lb; ++k) b.push_back(U'a' + static_cast<char32_t>(rng() % 4));
    REQUIRE(levenshtein(a, b) == oracle::levenshtein(a, b));
  }
}

TEST_CASE("fuzzy_find exact and approximate occurrences") {
  const std::u32string hay = U"the quick brown fox jumps over the lazy dog";
  auto exact = fuzzy_find(hay, U"brown fox", 0, MatchAnchor::kBegin, 0);
  REQUIRE(exact);
  CHECK(exact->begin == 10);
  CHECK(exact->end == 19);
  CHECK(exact->distance == 0);

  auto approx = fuzzy_find(hay, U"brwn fox", 2, MatchAnchor::kBegin, 0);
  REQUIRE(approx);
  CHECK(approx->distance == 1);
  CHECK(approx->end == 19);

  CHECK_FALSE(fuzzy_find(hay, U"zzzzzzzz", 2, MatchAnchor::kBegin, 0));
}

TEST_CASE("fuzzy_find tie-break by anchor distance to target") {
  const std::u32string hay = U"abc xx abc xx abc";
  auto near_start = fuzzy_find(hay, U"abc", 0, MatchAnchor::kBegin, 0);
  auto near_end = fuzzy_find(hay, U"abc", 0, MatchAnchor::kEnd, hay.size());
  auto middle = fuzzy_find(hay, U"abc", 0, MatchAnchor::kBegin, 7);
  REQUIRE(near_start);
  REQUIRE(near_end);
  REQUIRE(middle);
  CHECK(near_start->begin == 0);
  CHECK(near_end->begin == 14);
  CHECK(middle->begin == 7);
}

TEST_CASE("fuzzy_find distance equals best substring distance (oracle)") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::u32string hay;
    std::u32string pat;
    for (std::size_t k = 0, n = 1 + rng() % 15; k < n; ++k)
      hay.push_back(U'a' + static_cast<char32_t>(rng() % 3));
    for (std::size_t k = 0, n = 1 + rng() % 5; k < n; ++k)
      pat.push_back(U'a' + static_cast<char32_t>(rng() % 3));
    std::size_t best = pat.size();
    for (std::size_t i = 0; i <= hay.size(); ++i)
      for (std::size_t j = i; j <= hay.size(); ++j)
        best = std::min(best, oracle::levenshtein(hay.substr(i, j - i), pat));
    auto found = fuzzy_find(hay, pat, pat.size(), MatchAnchor::kBegin, 0);
    REQUIRE(found);
    CHECK(found->distance == best);
    CHECK(oracle::levenshtein(hay.substr(found->begin, found->end - found->begin), pat) ==
          found->distance);
  }
}
