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

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace docpair {

/// Levenshtein distance over code points divided by the longer length,
/// after whitespace normalization. 0 for two empty strings.
double normalized_edit_distance(std::string_view pred, std::string_view ref);

inline constexpr int kBleuMaxOrder = 4;

struct BleuStats {
  std::array<std::size_t, kBleuMaxOrder> matches{};
  std::array<std::size_t, kBleuMaxOrder> totals{};
  std::size_t pred_length = 0;
  std::size_t ref_length = 0;

  BleuStats& operator+=(const BleuStats& other);
};

BleuStats bleu_stats(const std::vector<std::string>& pred,
                     const std::vector<std::string>& ref,
                     int max_n = kBleuMaxOrder);
/// Geometric mean of clipped precisions (add-one for n >= 2) times the
/// brevity penalty, scaled to [0,100].
double bleu_score(const BleuStats& stats, int max_n = kBleuMaxOrder);
double bleu(std::string_view pred, std::string_view ref,
            int max_n = kBleuMaxOrder);

struct MeteorStats {
  std::size_t matches = 0;
  std::size_t chunks = 0;
  std::size_t pred_length = 0;
  std::size_t ref_length = 0;

  MeteorStats& operator+=(const MeteorStats& other);
};

/// One aligned unigram: positions in the prediction and the reference.
struct MeteorLink {
  std::size_t pred;
  std::size_t ref;
};

/// Exact stage then Porter-stem stage, greedy left to right. Tokens are
/// expected lowercased. Links are sorted by prediction position.
std::vector<MeteorLink> meteor_align(const std::vector<std::string>& pred,
                                     const std::vector<std::string>& ref);
std::size_t count_chunks(const std::vector<MeteorLink>& links);
MeteorStats meteor_stats(const std::vector<std::string>& pred,
                         const std::vector<std::string>& ref);
double meteor_score(const MeteorStats& stats);
double meteor(std::string_view pred, std::string_view ref);

struct PrfStats {
  std::size_t overlap = 0;
  std::size_t pred_length = 0;
  std::size_t ref_length = 0;

  PrfStats& operator+=(const PrfStats& other);
};

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

PrfStats prf_stats(const std::vector<std::string>& pred,
                   const std::vector<std::string>& ref);
Prf prf_score(const PrfStats& stats);
Prf token_prf(std::string_view pred, std::string_view ref);

struct MetricValues {
  double edit_distance = 0.0;
  double bleu = 0.0;
  double meteor = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

enum class Modality { kAll, kPlain, kMath, kTables };
inline constexpr std::array<Modality, 4> kModalities = {
    Modality::kAll, Modality::kPlain, Modality::kMath, Modality::kTables};
std::string_view modality_name(Modality m);

/// Everything needed to score one text pair and to fold it into a corpus.
struct PairScore {
  MetricValues values;
  std::size_t edit_distance = 0;
  std::size_t edit_length = 0;
  BleuStats bleu;
  MeteorStats meteor;
  PrfStats prf;
};

/// Scores a single pair. Empty when both sides are empty after
/// whitespace normalization (the modality does not apply).
std::optional<PairScore> score_pair(std::string_view pred,
                                    std::string_view ref);

struct ModalityReport {
  std::array<std::optional<PairScore>, 4> rows;
  bool pred_fallback = false;
  bool ref_fallback = false;

  const std::optional<PairScore>& operator[](Modality m) const {
    return rows[static_cast<std::size_t>(m)];
  }
};

/// Scores the unsplit pair and each modality slice pair. A side whose
/// delimiters do not balance is treated as plain text.
ModalityReport evaluate_sample(std::string_view pred_markup,
                               std::string_view ref_markup);

/// Associative accumulation of per-sample scores.
class MetricAccumulator {
 public:
  void add(const ModalityReport& report);
  void merge(const MetricAccumulator& other);

  std::size_t samples() const { return samples_; }
  std::size_t count(Modality m) const { return at(m).count; }
  /// Metrics recomputed from summed sufficient statistics.
  std::optional<MetricValues> corpus(Modality m) const;
  /// Unweighted mean of per-sample values.
  std::optional<MetricValues> mean(Modality m) const;

 private:
  struct Row {
    std::size_t count = 0;
    std::size_t edit_distance = 0;
    std::size_t edit_length = 0;
    BleuStats bleu;
    MeteorStats meteor;
    PrfStats prf;
    MetricValues value_sum;
  };
  const Row& at(Modality m) const { return rows_[static_cast<std::size_t>(m)]; }

  std::array<Row, 4> rows_{};
  std::size_t samples_ = 0;
};

}  // namespace docpair
