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

#include <cmath>
#include <random>

#include "docpair/metrics.hpp"
#include "docpair/porter_stemmer.hpp"
#include "docpair/text.hpp"
#include "oracles.hpp"

using namespace docpair;

namespace {

std::string random_sentence(std::mt19937_64& rng, std::size_t max_len) {
  static const std::vector<std::string> kWords = {"the", "cat", "sat", "on", "mat", "dog", "a"};
  std::string out;
  for (std::size_t k = 0, n = 1 + rng() % max_len; k < n; ++k) {
    if (k) out += ' ';
    out += kWords[rng() % kWords.size()];
  }
  return out;
}

}  // namespace

TEST_CASE("porter stemmer reference words") {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"caresses", "caress"}, {"ponies", "poni"},     {"cats", "cat"},
      {"feed", "feed"},       {"agreed", "agre"},     {"plastered", "plaster"},
      {"motoring", "motor"},  {"sing", "sing"},       {"conflated", "conflat"},
      {"troubled", "troubl"}, {"sized", "size"},      {"hopping", "hop"},
      {"falling", "fall"},    {"filing", "file"},     {"happy", "happi"},
      {"relational", "relat"}, {"conditional", "condit"}, {"rational", "ration"},
      {"digitizer", "digit"}, {"generalization", "gener"}, {"hopeful", "hope"},
      {"goodness", "good"},   {"revival", "reviv"},   {"adjustable", "adjust"},
      {"adoption", "adopt"},  {"controlling", "control"}, {"roll", "roll"},
      {"running", "run"},     {"is", "is"},           {"Running", "Running"}};
  for (const auto& [word, stem] : cases) CHECK_MESSAGE(porter_stem(word) == stem, word);
}

TEST_CASE("normalized edit distance") {
  CHECK(normalized_edit_distance("kitten", "sitting") == doctest::Approx(3.0 / 7.0));
  CHECK(normalized_edit_distance("abc", "abc") == 0.0);
  CHECK(normalized_edit_distance("", "abc") == 1.0);
  CHECK(normalized_edit_distance("", "") == 0.0);
  CHECK(normalized_edit_distance("\xCE\xB1\xCE\xB2", "\xCE\xB1") == doctest::Approx(0.5));
  CHECK(normalized_edit_distance("a  b \n", "a b") == 0.0);
}

TEST_CASE("edit distance is a metric on short strings") {
  std::vector<std::u32string> all = {U""};
  for (std::size_t len = 1; len <= 4; ++len) {
    const std::size_t start = all.size();
    for (std::size_t k = 0; k < start; ++k)
      if (all[k].size() == len - 1)
        for (char32_t c : {U'a', U'b', U'c'}) all.push_back(all[k] + c);
  }
  for (std::size_t i = 0; i < all.size(); i += 3)
    for (std::size_t j = 0; j < all.size(); j += 2) {
      const auto dij = levenshtein(all[i], all[j]);
      CHECK(dij == levenshtein(all[j], all[i]));
      for (std::size_t k = 0; k < all.size(); k += 7)
        CHECK(dij <= levenshtein(all[i], all[k]) + levenshtein(all[k], all[j]));
    }
}

TEST_CASE("bleu spot values") {
  CHECK(bleu("the cat sat", "the cat sat") == doctest::Approx(100.0));
  CHECK(bleu("dog", "the cat sat") == 0.0);
  CHECK(bleu("", "the cat") == 0.0);
  CHECK(bleu("the cat sat", "the cat sat down") ==
        doctest::Approx(100.0 * std::exp(1.0 - 4.0 / 3.0)));
  CHECK(bleu("the cat sat", "the cat sat down") ==
        doctest::Approx(oracle::bleu(oracle::tokens("the cat sat"),
                                     oracle::tokens("the cat sat down"))));
}

TEST_CASE("bleu matches the naive oracle and is 100 only for identical sequences") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::string p = random_sentence(rng, 9);
    const std::string r = rng() % 4 == 0 ? p : random_sentence(rng, 9);
    const double b = bleu(p, r);
    CHECK(b == doctest::Approx(oracle::bleu(oracle::tokens(p), oracle::tokens(r))).epsilon(1e-12));
    CHECK(b >= 0.0);
    CHECK(b <= 100.0 + 1e-9);
    if (oracle::tokens(p).size() >= 4) CHECK((std::abs(b - 100.0) < 1e-9) == (oracle::tokens(p) == oracle::tokens(r)));
  }
}

TEST_CASE("meteor spot values") {
  CHECK(meteor("the cat", "cat the") == doctest::Approx(50.0));
  CHECK(meteor("dog", "cat") == 0.0);
  CHECK(meteor("a b c", "a b c") == doctest::Approx(oracle::meteor_formula(3, 1, 3, 3)));
  CHECK(meteor("a b c", "a b c") >= 98.0);
  // Stem stage: "running" aligns with "runs" through "run".
  CHECK(meteor("the dog running", "the dog runs") == doctest::Approx(oracle::meteor_formula(3, 1, 3, 3)));
  CHECK(meteor("The Cat", "the cat") == doctest::Approx(oracle::meteor_formula(2, 1, 2, 2)));
}

TEST_CASE("meteor alignment prefers chunk continuation") {
  const std::vector<std::string> pred = {"a", "b", "a", "b"};
  const std::vector<std::string> ref = {"a", "b", "a", "b"};
  const auto links = meteor_align(pred, ref);
  REQUIRE(links.size() == 4);
  CHECK(count_chunks(links) == 1);
}

TEST_CASE("token precision recall f1") {
  auto r = token_prf("a b", "a b c d");
  CHECK(r.precision == 100.0);
  CHECK(r.recall == 50.0);
  CHECK(r.f1 == doctest::Approx(200.0 / 3.0));
  r = token_prf("x y", "a b");
  CHECK(r.f1 == 0.0);
  r = token_prf("", "");
  CHECK(r.precision == 100.0);
  r = token_prf("", "a");
  CHECK(r.recall == 0.0);
  CHECK(token_prf("a a b", "b a").precision == doctest::Approx(200.0 / 3.0));

  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 300; ++trial) {
    const std::string p = random_sentence(rng, 8);
    const std::string q = random_sentence(rng, 8);
    const auto pq = token_prf(p, q);
    const auto qp = token_prf(q, p);
    CHECK(pq.precision == qp.recall);
    CHECK(pq.recall == qp.precision);
    const auto overlap = oracle::multiset_overlap(oracle::tokens(p), oracle::tokens(q));
    CHECK(pq.precision == doctest::Approx(100.0 * overlap / oracle::tokens(p).size()));
  }
}

TEST_CASE("all metrics ignore whitespace layout") {
  const std::string a = "the cat\n sat  on the mat";
  const std::string b = "the dog sat on a mat";
  const std::string a2 = "  the cat sat on the   mat \n\n";
  CHECK(normalized_edit_distance(a, b) == normalized_edit_distance(a2, b));
  CHECK(bleu(a, b) == bleu(a2, b));
  CHECK(meteor(a, b) == meteor(a2, b));
  CHECK(token_prf(a, b).f1 == token_prf(a2, b).f1);
}

TEST_CASE("evaluate_sample per modality") {
  const std::string ref =
      "Intro text here.\n\n\\[\nx^2\n\\]\n\n\\begin{table}\na & b\n\\end{table}";
  const auto same = evaluate_sample(ref, ref);
  for (Modality m : kModalities) {
    REQUIRE(same[m]);
    CHECK(same[m]->values.edit_distance == 0.0);
    CHECK(same[m]->values.bleu == doctest::Approx(100.0));
    CHECK(same[m]->values.f1 == doctest::Approx(100.0));
  }

  const std::string no_table = "Intro text here.\n\n\\[\nx^2\n\\]";
  const auto missing = evaluate_sample(no_table, ref);
  REQUIRE(missing[Modality::kTables]);
  CHECK(missing[Modality::kTables]->values.recall == 0.0);
  CHECK(missing[Modality::kPlain]->values.f1 == doctest::Approx(100.0));

  const auto text_only = evaluate_sample("just words", "just words");
  CHECK_FALSE(text_only[Modality::kMath]);
  CHECK_FALSE(text_only[Modality::kTables]);

  const auto broken = evaluate_sample("unbalanced \\( math", "unbalanced math");
  CHECK(broken.pred_fallback);
  CHECK_FALSE(broken.ref_fallback);
  REQUIRE(broken[Modality::kPlain]);
}

TEST_CASE("accumulator merge equals sequential accumulation") {
  std::mt19937_64 rng(43);
  std::vector<ModalityReport> reports;
  for (int k = 0; k < 30; ++k) {
    std::string p = random_sentence(rng, 10);
    std::string r = random_sentence(rng, 10);
    if (k % 3 == 0) p += " \\(x + " + std::to_string(k % 5) + "\\)";
    if (k % 2 == 0) r += " \\(x + 1\\)";
    reports.push_back(evaluate_sample(p, r));
  }
  MetricAccumulator all;
  MetricAccumulator left;
  MetricAccumulator right;
  for (std::size_t k = 0; k < reports.size(); ++k) {
    all.add(reports[k]);
    (k < 11 ? left : right).add(reports[k]);
  }
  left.merge(right);
  CHECK(left.samples() == all.samples());
  for (Modality m : kModalities) {
    CHECK(left.count(m) == all.count(m));
    const auto a = all.corpus(m);
    const auto b = left.corpus(m);
    REQUIRE(a.has_value() == b.has_value());
    if (a) {
      CHECK(a->bleu == doctest::Approx(b->bleu));
      CHECK(a->meteor == doctest::Approx(b->meteor));
      CHECK(a->edit_distance == doctest::Approx(b->edit_distance));
    }
    const auto ma = all.mean(m);
    const auto mb = left.mean(m);
    if (ma) CHECK(ma->f1 == doctest::Approx(mb->f1));
  }
}
