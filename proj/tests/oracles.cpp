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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace oracle {

Fraction gini(const std::vector<int>& pred, std::size_t a, std::size_t b, int page) {
  const auto len = static_cast<std::int64_t>(b - a);
  std::int64_t c0 = 0;
  std::int64_t c1 = 0;
  for (std::size_t k = a; k < b; ++k) {
    if (pred[k] == page) ++c0;
    if (pred[k] == page + 1) ++c1;
  }
  // len * (1 - (c0/len)^2 - (c1/len)^2)
  return {len * len - c0 * c0 - c1 * c1, len};
}

double gini_value(const std::vector<int>& pred, std::size_t a, std::size_t b, int page) {
  const Fraction f = gini(pred, a, b, page);
  return static_cast<double>(f.num) / static_cast<double>(f.den);
}

std::size_t best_split(const std::vector<int>& pred, std::size_t a, std::size_t b,
                       int page) {
  std::size_t best = a + 1;
  Fraction best_value{};
  bool have = false;
  for (std::size_t t = a + 1; t < b; ++t) {
    const Fraction l = gini(pred, a, t, page);
    const Fraction r = gini(pred, t, b, page);
    const Fraction sum{l.num * r.den + r.num * l.den, l.den * r.den};
    if (!have || sum.num * best_value.den < best_value.num * sum.den) {
      best = t;
      best_value = sum;
      have = true;
    }
  }
  return best;
}

std::size_t levenshtein(const std::u32string& a, const std::u32string& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1,
                                          std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j)
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
  return d[a.size()][b.size()];
}

double variance(const std::vector<double>& values, std::size_t begin, std::size_t end) {
  long double mean = 0;
  for (std::size_t k = begin; k < end; ++k) mean += values[k];
  mean /= static_cast<long double>(end - begin);
  long double acc = 0;
  for (std::size_t k = begin; k < end; ++k) acc += (values[k] - mean) * (values[k] - mean);
  return static_cast<double>(acc / static_cast<long double>(end - begin));
}

std::vector<std::string> tokens(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

std::size_t clipped_matches(const std::vector<std::string>& pred,
                            const std::vector<std::string>& ref, std::size_t n) {
  if (pred.size() < n) return 0;
  std::vector<bool> used(ref.size() >= n ? ref.size() - n + 1 : 0, false);
  std::size_t matches = 0;
  for (std::size_t i = 0; i + n <= pred.size(); ++i) {
    for (std::size_t j = 0; j < used.size(); ++j) {
      if (used[j]) continue;
      if (std::equal(pred.begin() + static_cast<std::ptrdiff_t>(i),
                     pred.begin() + static_cast<std::ptrdiff_t>(i + n),
                     ref.begin() + static_cast<std::ptrdiff_t>(j))) {
        used[j] = true;
        ++matches;
        break;
      }
    }
  }
  return matches;
}

double bleu(const std::vector<std::string>& pred, const std::vector<std::string>& ref) {
  if (pred.empty()) return 0.0;
  double product = 1.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    const double m = static_cast<double>(clipped_matches(pred, ref, n));
    const double t = pred.size() >= n ? static_cast<double>(pred.size() - n + 1) : 0.0;
    if (n == 1 && m == 0.0) return 0.0;
    product *= n == 1 ? m / t : (m + 1.0) / (t + 1.0);
  }
  const double c = static_cast<double>(pred.size());
  const double r = static_cast<double>(ref.size());
  const double bp = c >= r ? 1.0 : std::exp(1.0 - r / c);
  return 100.0 * bp * std::pow(product, 0.25);
}

double meteor_formula(std::size_t matches, std::size_t chunks, std::size_t pred_len,
                      std::size_t ref_len) {
  if (matches == 0) return 0.0;
  const double m = static_cast<double>(matches);
  const double p = m / static_cast<double>(pred_len);
  const double r = m / static_cast<double>(ref_len);
  const double fmean = 10.0 * p * r / (r + 9.0 * p);
  const double ratio = static_cast<double>(chunks) / m;
  return 100.0 * fmean * (1.0 - 0.5 * std::pow(ratio, 3.0));
}

std::size_t multiset_overlap(std::vector<std::string> pred, std::vector<std::string> ref) {
  std::sort(pred.begin(), pred.end());
  std::sort(ref.begin(), ref.end());
  std::vector<std::string> common;
  std::set_intersection(pred.begin(), pred.end(), ref.begin(), ref.end(),
                        std::back_inserter(common));
  return common.size();
}

double geometric_pmf(std::size_t k, double p) {
  return std::pow(1.0 - p, static_cast<double>(k)) * p;
}

double chi_square_critical(std::size_t dof, double alpha) {
  // Normal quantile by bisection on the complementary error function.
  double lo = 0.0;
  double hi = 10.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double tail = 0.5 * std::erfc(mid / std::sqrt(2.0));
    (tail > alpha ? lo : hi) = mid;
  }
  const double z = 0.5 * (lo + hi);
  const double k = static_cast<double>(dof);
  const double h = 2.0 / (9.0 * k);
  return k * std::pow(1.0 - h + z * std::sqrt(h), 3.0);
}

}  // namespace oracle
