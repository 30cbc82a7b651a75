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

#include "docpair/classifier.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "docpair/error.hpp"
#include "docpair/markup.hpp"
#include "docpair/random.hpp"
#include "docpair/text.hpp"

namespace docpair {

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (current.size() >= 2) tokens.push_back(current);
    current.clear();
  };
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (c >= 0x80 || std::isalnum(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

TfIdfVectorizer TfIdfVectorizer::fit(std::span<const std::string> documents) {
  TfIdfVectorizer v;
  std::map<std::string, std::size_t> df;
  for (const auto& doc : documents) {
    auto tokens = tokenize(doc);
    std::sort(tokens.begin(), tokens.end());
    tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
    for (auto& t : tokens) ++df[t];
  }
  // std::map iteration gives a deterministic column order.
  const double d = static_cast<double>(documents.size());
  for (const auto& [token, count] : df) {
    v.vocabulary_.emplace(token, static_cast<std::uint32_t>(v.idf_.size()));
    v.idf_.push_back(std::log((1.0 + d) / (1.0 + static_cast<double>(count))) +
                     1.0);
  }
  return v;
}

double TfIdfVectorizer::idf(const std::string& token) const {
  auto it = vocabulary_.find(token);
  return it == vocabulary_.end() ? 0.0 : idf_[it->second];
}

SparseVector TfIdfVectorizer::transform(std::string_view text) const {
  std::map<std::uint32_t, double> counts;
  for (const auto& token : tokenize(text)) {
    auto it = vocabulary_.find(token);
    if (it != vocabulary_.end()) counts[it->second] += 1.0;
  }
  SparseVector out;
  double norm = 0.0;
  for (const auto& [column, tf] : counts) {
    const double value = tf * idf_[column];
    out.entries.emplace_back(column, value);
    norm += value * value;
  }
  if (norm > 0.0) {
    norm = std::sqrt(norm);
    for (auto& e : out.entries) e.second /= norm;
  }
  return out;
}

namespace {

// Weight vector stored as scale * v, with the running sum of iterates kept
// as sum_p + sum_q * v so sparse steps stay sparse.
struct AveragedWeights {
  std::vector<double> v;
  std::vector<double> sum_p;
  double scale = 1.0;
  double sum_q = 0.0;
  double bias = 0.0;
  double bias_sum = 0.0;

  explicit AveragedWeights(std::size_t dim) : v(dim, 0.0), sum_p(dim, 0.0) {}

  double dot(const SparseVector& x) const {
    double s = 0.0;
    for (const auto& [j, value] : x.entries) s += v[j] * value;
    return scale * s;
  }

  void step(const SparseVector& x, double y, double eta, double lambda) {
    const double margin = y * (dot(x) + bias);
    scale *= 1.0 - eta * lambda;
    if (scale < 1e-9) renormalize();
    if (margin < 1.0) {
      const double delta = eta * y / scale;
      for (const auto& [j, value] : x.entries) {
        v[j] += delta * value;
        sum_p[j] -= sum_q * delta * value;
      }
      bias += eta * y;
    }
    sum_q += scale;
    bias_sum += bias;
  }

  void renormalize() {
    for (double& w : v) w *= scale;
    sum_q /= scale;
    scale = 1.0;
  }

  std::vector<double> average(double steps) const {
    std::vector<double> w(v.size());
    for (std::size_t j = 0; j < v.size(); ++j)
      w[j] = (sum_p[j] + sum_q * v[j]) / steps;
    return w;
  }
};

}  // namespace

LinearPageClassifier LinearPageClassifier::fit(std::span<const SparseVector> rows,
                                               std::span<const int> labels,
                                               std::size_t dimension,
                                               const SvmParams& params) {
  LinearPageClassifier model;
  std::set<int> pages(labels.begin(), labels.end());
  model.pages_.assign(pages.begin(), pages.end());

  std::vector<AveragedWeights> weights(model.pages_.size(),
                                       AveragedWeights(dimension));
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(params.seed);
  double t = 0.0;
  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    for (std::size_t k = order.size(); k > 1; --k)
      std::swap(order[k - 1], order[uniform_index(rng, k)]);
    for (std::size_t idx : order) {
      const double eta = 1.0 / (1.0 + params.lambda * t);
      for (std::size_t c = 0; c < model.pages_.size(); ++c) {
        const double y = labels[idx] == model.pages_[c] ? 1.0 : -1.0;
        weights[c].step(rows[idx], y, eta, params.lambda);
      }
      t += 1.0;
    }
  }
  const double steps = std::max(t, 1.0);
  for (const auto& w : weights) {
    model.weights_.push_back(w.average(steps));
    model.bias_.push_back(w.bias_sum / steps);
  }
  return model;
}

std::vector<double> LinearPageClassifier::scores(const SparseVector& x) const {
  std::vector<double> out(pages_.size());
  for (std::size_t c = 0; c < pages_.size(); ++c) {
    double s = bias_[c];
    for (const auto& [j, value] : x.entries) s += weights_[c][j] * value;
    out[c] = s;
  }
  return out;
}

int LinearPageClassifier::predict(const SparseVector& x) const {
  const auto s = scores(x);
  std::size_t best = 0;
  for (std::size_t c = 1; c < s.size(); ++c)
    if (s[c] > s[best]) best = c;
  return pages_.empty() ? 1 : pages_[best];
}

PageModel fit_page_classifier(std::span<const PageObservation> observations,
                              const SvmParams& params) {
  // Deduplicate by line text, keeping the lowest page.
  std::map<std::string, int> unique_lines;
  std::vector<std::string> order;
  int max_page = 0;
  for (const auto& obs : observations) {
    if (obs.page_index < 1)
      throw FitError("page index " + std::to_string(obs.page_index) +
                     " is not positive");
    max_page = std::max(max_page, obs.page_index);
    if (tokenize(obs.line_text).empty()) continue;
    auto [it, inserted] = unique_lines.emplace(obs.line_text, obs.page_index);
    if (inserted) {
      order.push_back(obs.line_text);
    } else {
      it->second = std::min(it->second, obs.page_index);
    }
  }
  std::vector<int> labels;
  labels.reserve(order.size());
  std::vector<bool> seen(static_cast<std::size_t>(max_page) + 1, false);
  for (const auto& line : order) {
    labels.push_back(unique_lines[line]);
    seen[static_cast<std::size_t>(labels.back())] = true;
  }
  for (int page = 1; page <= max_page; ++page)
    if (!seen[static_cast<std::size_t>(page)])
      throw FitError("page " + std::to_string(page) + " has no observations");

  PageModel model{TfIdfVectorizer::fit(order), {}};
  if (model.vectorizer.vocabulary_size() == 0)
    throw FitError("empty vocabulary");
  std::vector<SparseVector> rows;
  rows.reserve(order.size());
  for (const auto& line : order) rows.push_back(model.vectorizer.transform(line));
  model.classifier = LinearPageClassifier::fit(
      rows, labels, model.vectorizer.vocabulary_size(), params);
  return model;
}

std::vector<int> predict_paragraph_pages(const PageModel& model,
                                         std::span<const std::string> paragraphs) {
  std::vector<int> out;
  out.reserve(paragraphs.size());
  int previous = 1;
  for (const auto& paragraph : paragraphs) {
    const SparseVector x = model.vectorizer.transform(paragraph);
    if (!x.empty()) previous = model.classifier.predict(x);
    out.push_back(previous);
  }
  return out;
}

namespace {

bool is_page_number(std::string_view line) {
  bool digit = false;
  for (char ch : line) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isdigit(c)) {
      digit = true;
    } else if (!std::isspace(c) && c != '-' && c != '.' && c != '|') {
      return false;
    }
  }
  return digit;
}

}  // namespace

std::vector<std::vector<std::string>> clean_pdf_pages(
    const std::vector<std::vector<std::string>>& pages) {
  std::map<std::string, std::size_t> page_counts;
  for (const auto& page : pages) {
    std::set<std::string> distinct;
    for (const auto& line : page) distinct.insert(normalize_whitespace(line));
    for (const auto& line : distinct) ++page_counts[line];
  }
  const double half = 0.5 * static_cast<double>(pages.size());
  std::vector<std::vector<std::string>> out;
  out.reserve(pages.size());
  for (const auto& page : pages) {
    std::vector<std::string> kept;
    for (const auto& raw : page) {
      const std::string line = normalize_whitespace(raw);
      if (line.empty() || is_page_number(line)) continue;
      const std::size_t count = page_counts[line];
      if (count >= 2 && static_cast<double>(count) >= half) continue;
      kept.push_back(unicode_to_latex(line));
    }
    out.push_back(std::move(kept));
  }
  return out;
}

std::vector<PageObservation> to_observations(
    const std::vector<std::vector<std::string>>& pages) {
  std::vector<PageObservation> out;
  for (std::size_t p = 0; p < pages.size(); ++p)
    for (const auto& line : pages[p])
      out.push_back({line, static_cast<int>(p) + 1});
  return out;
}

}  // namespace docpair
