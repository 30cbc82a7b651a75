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

#include "docpair/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "docpair/error.hpp"
#include "docpair/markup.hpp"
#include "docpair/porter_stemmer.hpp"
#include "docpair/text.hpp"

namespace docpair {
namespace {

std::vector<std::string> tokens_of(std::string_view text) {
  return split_whitespace(normalize_whitespace(text));
}

std::string lowercase(std::string s) {
  for (char& c : s)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return s;
}

std::vector<std::string> lowercase_all(std::vector<std::string> tokens) {
  for (auto& t : tokens) t = lowercase(std::move(t));
  return tokens;
}

std::map<std::string, std::size_t> ngram_counts(
    const std::vector<std::string>& tokens, int n) {
  std::map<std::string, std::size_t> counts;
  const auto len = static_cast<std::size_t>(n);
  if (tokens.size() < len) return counts;
  for (std::size_t i = 0; i + len <= tokens.size(); ++i) {
    std::string key;
    for (std::size_t k = 0; k < len; ++k) {
      if (k) key.push_back('\x1f');
      key += tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

// Extends pred-to-ref links using `key` as the match criterion.
void align_stage(const std::vector<std::string>& pred_keys,
                 const std::vector<std::string>& ref_keys,
                 std::vector<std::ptrdiff_t>& pred_to_ref,
                 std::vector<bool>& ref_used) {
  std::unordered_map<std::string, std::vector<std::size_t>> positions;
  for (std::size_t j = 0; j < ref_keys.size(); ++j)
    positions[ref_keys[j]].push_back(j);

  for (std::size_t i = 0; i < pred_keys.size(); ++i) {
    if (pred_to_ref[i] >= 0) continue;
    auto it = positions.find(pred_keys[i]);
    if (it == positions.end()) continue;
    std::ptrdiff_t chosen = -1;
    if (i > 0 && pred_to_ref[i - 1] >= 0) {
      const auto next = static_cast<std::size_t>(pred_to_ref[i - 1] + 1);
      if (next < ref_keys.size() && !ref_used[next] &&
          ref_keys[next] == pred_keys[i])
        chosen = static_cast<std::ptrdiff_t>(next);
    }
    if (chosen < 0) {
      for (std::size_t j : it->second) {
        if (!ref_used[j]) {
          chosen = static_cast<std::ptrdiff_t>(j);
          break;
        }
      }
    }
    if (chosen < 0) continue;
    pred_to_ref[i] = chosen;
    ref_used[static_cast<std::size_t>(chosen)] = true;
  }
}

double percent(std::size_t num, std::size_t den) {
  return 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

double normalized_edit_distance(std::string_view pred, std::string_view ref) {
  return normalized_levenshtein(utf8_decode(normalize_whitespace(pred)),
                                utf8_decode(normalize_whitespace(ref)));
}

BleuStats& BleuStats::operator+=(const BleuStats& other) {
  for (std::size_t n = 0; n < matches.size(); ++n) {
    matches[n] += other.matches[n];
    totals[n] += other.totals[n];
  }
  pred_length += other.pred_length;
  ref_length += other.ref_length;
  return *this;
}

BleuStats bleu_stats(const std::vector<std::string>& pred,
                     const std::vector<std::string>& ref, int max_n) {
  if (max_n < 1 || max_n > kBleuMaxOrder)
    throw std::invalid_argument("bleu order out of range");
  BleuStats stats;
  stats.pred_length = pred.size();
  stats.ref_length = ref.size();
  for (int n = 1; n <= max_n; ++n) {
    const auto pred_counts = ngram_counts(pred, n);
    const auto ref_counts = ngram_counts(ref, n);
    std::size_t matched = 0;
    std::size_t total = 0;
    for (const auto& [gram, count] : pred_counts) {
      total += count;
      auto it = ref_counts.find(gram);
      if (it != ref_counts.end()) matched += std::min(count, it->second);
    }
    stats.matches[static_cast<std::size_t>(n - 1)] = matched;
    stats.totals[static_cast<std::size_t>(n - 1)] = total;
  }
  return stats;
}

double bleu_score(const BleuStats& stats, int max_n) {
  if (max_n < 1 || max_n > kBleuMaxOrder)
    throw std::invalid_argument("bleu order out of range");
  if (stats.pred_length == 0 || stats.matches[0] == 0) return 0.0;
  double log_sum = 0.0;
  for (int n = 1; n <= max_n; ++n) {
    const auto idx = static_cast<std::size_t>(n - 1);
    double m = static_cast<double>(stats.matches[idx]);
    double t = static_cast<double>(stats.totals[idx]);
    if (n >= 2) {
      m += 1.0;
      t += 1.0;
    }
    log_sum += std::log(m / t);
  }
  const double c = static_cast<double>(stats.pred_length);
  const double r = static_cast<double>(stats.ref_length);
  const double log_bp = c >= r ? 0.0 : 1.0 - r / c;
  return 100.0 * std::exp(log_bp + log_sum / max_n);
}

double bleu(std::string_view pred, std::string_view ref, int max_n) {
  return bleu_score(bleu_stats(tokens_of(pred), tokens_of(ref), max_n), max_n);
}

MeteorStats& MeteorStats::operator+=(const MeteorStats& other) {
  matches += other.matches;
  chunks += other.chunks;
  pred_length += other.pred_length;
  ref_length += other.ref_length;
  return *this;
}

std::vector<MeteorLink> meteor_align(const std::vector<std::string>& pred,
                                     const std::vector<std::string>& ref) {
  std::vector<std::ptrdiff_t> pred_to_ref(pred.size(), -1);
  std::vector<bool> ref_used(ref.size(), false);
  align_stage(pred, ref, pred_to_ref, ref_used);

  std::vector<std::string> pred_stems;
  std::vector<std::string> ref_stems;
  pred_stems.reserve(pred.size());
  ref_stems.reserve(ref.size());
  for (const auto& t : pred) pred_stems.push_back(porter_stem(t));
  for (const auto& t : ref) ref_stems.push_back(porter_stem(t));
  align_stage(pred_stems, ref_stems, pred_to_ref, ref_used);

  std::vector<MeteorLink> links;
  for (std::size_t i = 0; i < pred.size(); ++i)
    if (pred_to_ref[i] >= 0)
      links.push_back({i, static_cast<std::size_t>(pred_to_ref[i])});
  return links;
}

std::size_t count_chunks(const std::vector<MeteorLink>& links) {
  std::size_t chunks = 0;
  for (std::size_t k = 0; k < links.size(); ++k) {
    if (k == 0 || links[k].pred != links[k - 1].pred + 1 ||
        links[k].ref != links[k - 1].ref + 1)
      ++chunks;
  }
  return chunks;
}

MeteorStats meteor_stats(const std::vector<std::string>& pred,
                         const std::vector<std::string>& ref) {
  const auto links = meteor_align(pred, ref);
  MeteorStats stats;
  stats.matches = links.size();
  stats.chunks = count_chunks(links);
  stats.pred_length = pred.size();
  stats.ref_length = ref.size();
  return stats;
}

double meteor_score(const MeteorStats& stats) {
  if (stats.matches == 0) return 0.0;
  const double m = static_cast<double>(stats.matches);
  const double p = m / static_cast<double>(stats.pred_length);
  const double r = m / static_cast<double>(stats.ref_length);
  const double fmean = 10.0 * p * r / (r + 9.0 * p);
  const double frag = static_cast<double>(stats.chunks) / m;
  const double penalty = 0.5 * frag * frag * frag;
  return 100.0 * fmean * (1.0 - penalty);
}

double meteor(std::string_view pred, std::string_view ref) {
  return meteor_score(meteor_stats(lowercase_all(tokens_of(pred)),
                                   lowercase_all(tokens_of(ref))));
}

PrfStats& PrfStats::operator+=(const PrfStats& other) {
  overlap += other.overlap;
  pred_length += other.pred_length;
  ref_length += other.ref_length;
  return *this;
}

PrfStats prf_stats(const std::vector<std::string>& pred,
                   const std::vector<std::string>& ref) {
  std::unordered_map<std::string, std::size_t> ref_counts;
  for (const auto& t : ref) ++ref_counts[t];
  PrfStats stats;
  stats.pred_length = pred.size();
  stats.ref_length = ref.size();
  for (const auto& t : pred) {
    auto it = ref_counts.find(t);
    if (it != ref_counts.end() && it->second > 0) {
      --it->second;
      ++stats.overlap;
    }
  }
  return stats;
}

Prf prf_score(const PrfStats& stats) {
  if (stats.pred_length == 0 && stats.ref_length == 0) return {100, 100, 100};
  if (stats.pred_length == 0 || stats.ref_length == 0) return {0, 0, 0};
  Prf out;
  out.precision = percent(stats.overlap, stats.pred_length);
  out.recall = percent(stats.overlap, stats.ref_length);
  const double sum = out.precision + out.recall;
  out.f1 = sum > 0.0 ? 2.0 * out.precision * out.recall / sum : 0.0;
  return out;
}

Prf token_prf(std::string_view pred, std::string_view ref) {
  return prf_score(prf_stats(tokens_of(pred), tokens_of(ref)));
}

std::string_view modality_name(Modality m) {
  switch (m) {
    case Modality::kAll:
      return "all";
    case Modality::kPlain:
      return "plain";
    case Modality::kMath:
      return "math";
    case Modality::kTables:
      return "tables";
  }
  return "unknown";
}

std::optional<PairScore> score_pair(std::string_view pred,
                                    std::string_view ref) {
  const std::string p = normalize_whitespace(pred);
  const std::string r = normalize_whitespace(ref);
  if (p.empty() && r.empty()) return std::nullopt;

  PairScore out;
  const auto p32 = utf8_decode(p);
  const auto r32 = utf8_decode(r);
  out.edit_distance = levenshtein(p32, r32);
  out.edit_length = std::max(p32.size(), r32.size());

  const auto p_tokens = split_whitespace(p);
  const auto r_tokens = split_whitespace(r);
  out.bleu = bleu_stats(p_tokens, r_tokens);
  out.meteor = meteor_stats(lowercase_all(p_tokens), lowercase_all(r_tokens));
  out.prf = prf_stats(p_tokens, r_tokens);

  out.values.edit_distance = static_cast<double>(out.edit_distance) /
                             static_cast<double>(out.edit_length);
  out.values.bleu = bleu_score(out.bleu);
  out.values.meteor = meteor_score(out.meteor);
  const Prf prf = prf_score(out.prf);
  out.values.precision = prf.precision;
  out.values.recall = prf.recall;
  out.values.f1 = prf.f1;
  return out;
}

namespace {

struct Slices {
  std::string plain;
  std::string math;
  std::string tables;
  bool fallback = false;
};

std::string join_pieces(const std::vector<std::string>& pieces) {
  std::string out;
  for (const auto& piece : pieces) {
    if (!out.empty()) out.push_back(' ');
    out += piece;
  }
  return out;
}

Slices slice(std::string_view markup) {
  Slices out;
  try {
    ModalitySlices s = split_modalities(markup);
    out.plain = std::move(s.plain);
    out.math = join_pieces(s.math_pieces);
    out.tables = join_pieces(s.table_pieces);
  } catch (const ParseError&) {
    out.plain = std::string(markup);
    out.fallback = true;
  }
  return out;
}

}  // namespace

ModalityReport evaluate_sample(std::string_view pred_markup,
                               std::string_view ref_markup) {
  ModalityReport report;
  const Slices p = slice(pred_markup);
  const Slices r = slice(ref_markup);
  report.pred_fallback = p.fallback;
  report.ref_fallback = r.fallback;
  report.rows[0] = score_pair(pred_markup, ref_markup);
  report.rows[1] = score_pair(p.plain, r.plain);
  report.rows[2] = score_pair(p.math, r.math);
  report.rows[3] = score_pair(p.tables, r.tables);
  return report;
}

void MetricAccumulator::add(const ModalityReport& report) {
  ++samples_;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const auto& score = report.rows[k];
    if (!score) continue;
    Row& row = rows_[k];
    ++row.count;
    row.edit_distance += score->edit_distance;
    row.edit_length += score->edit_length;
    row.bleu += score->bleu;
    row.meteor += score->meteor;
    row.prf += score->prf;
    row.value_sum.edit_distance += score->values.edit_distance;
    row.value_sum.bleu += score->values.bleu;
    row.value_sum.meteor += score->values.meteor;
    row.value_sum.precision += score->values.precision;
    row.value_sum.recall += score->values.recall;
    row.value_sum.f1 += score->values.f1;
  }
}

void MetricAccumulator::merge(const MetricAccumulator& other) {
  samples_ += other.samples_;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    Row& row = rows_[k];
    const Row& o = other.rows_[k];
    row.count += o.count;
    row.edit_distance += o.edit_distance;
    row.edit_length += o.edit_length;
    row.bleu += o.bleu;
    row.meteor += o.meteor;
    row.prf += o.prf;
    row.value_sum.edit_distance += o.value_sum.edit_distance;
    row.value_sum.bleu += o.value_sum.bleu;
    row.value_sum.meteor += o.value_sum.meteor;
    row.value_sum.precision += o.value_sum.precision;
    row.value_sum.recall += o.value_sum.recall;
    row.value_sum.f1 += o.value_sum.f1;
  }
}

std::optional<MetricValues> MetricAccumulator::corpus(Modality m) const {
  const Row& row = at(m);
  if (row.count == 0) return std::nullopt;
  MetricValues v;
  v.edit_distance = row.edit_length == 0
                        ? 0.0
                        : static_cast<double>(row.edit_distance) /
                              static_cast<double>(row.edit_length);
  v.bleu = bleu_score(row.bleu);
  v.meteor = meteor_score(row.meteor);
  const Prf prf = prf_score(row.prf);
  v.precision = prf.precision;
  v.recall = prf.recall;
  v.f1 = prf.f1;
  return v;
}

std::optional<MetricValues> MetricAccumulator::mean(Modality m) const {
  const Row& row = at(m);
  if (row.count == 0) return std::nullopt;
  const double n = static_cast<double>(row.count);
  MetricValues v = row.value_sum;
  v.edit_distance /= n;
  v.bleu /= n;
  v.meteor /= n;
  v.precision /= n;
  v.recall /= n;
  v.f1 /= n;
  return v;
}

}  // namespace docpair
