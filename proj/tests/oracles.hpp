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

// Deliberately naive reference implementations used to check the library.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace oracle {

/// Exact value of the interval Gini measure as numerator / denominator.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

Fraction gini(const std::vector<int>& pred, std::size_t a, std::size_t b, int page);
double gini_value(const std::vector<int>& pred, std::size_t a, std::size_t b, int page);

/// Tries every t in (a, b); smallest t on exact ties.
std::size_t best_split(const std::vector<int>& pred, std::size_t a, std::size_t b,
                       int page);

/// Full (m+1) x (n+1) dynamic-programming matrix.
std::size_t levenshtein(const std::u32string& a, const std::u32string& b);

/// Population variance, recomputed from scratch.
double variance(const std::vector<double>& values, std::size_t begin, std::size_t end);

std::vector<std::string> tokens(const std::string& text);

/// Clipped n-gram matches by pairwise search.
std::size_t clipped_matches(const std::vector<std::string>& pred,
                            const std::vector<std::string>& ref, std::size_t n);

/// Sentence BLEU with the library's smoothing convention, from scratch.
double bleu(const std::vector<std::string>& pred, const std::vector<std::string>& ref);

/// METEOR formula from alignment counts.
double meteor_formula(std::size_t matches, std::size_t chunks, std::size_t pred_len,
                      std::size_t ref_len);

/// Multiset overlap by sorting both sides.
std::size_t multiset_overlap(std::vector<std::string> pred, std::vector<std::string> ref);

/// Geometric(p) probability of k failures before the first success.
double geometric_pmf(std::size_t k, double p);

/// Upper-tail chi-square quantile approximation (Wilson-Hilferty).
double chi_square_critical(std::size_t dof, double alpha);

}  // namespace oracle
