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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "docpair/config.hpp"
#include "docpair/metrics.hpp"

namespace docpair {

namespace fs = std::filesystem;

/// Unreadable or malformed input. The message carries the file and, where
/// it applies, the line number.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  std::size_t jobs = 1;        // 0 means one per logical CPU
  std::ostream* warnings = nullptr;  // defaults to std::cerr
};

/// HTML to markup. One input writes its markup to `out` (a file); several
/// inputs write `<stem>.md` files into the directory `out`.
std::size_t run_convert(const std::vector<fs::path>& html_paths,
                        const fs::path& out);

struct PairInputs {
  std::vector<fs::path> html;
  fs::path pdf_text;               // JSONL {"doc"?, "page", "lines"}
  std::optional<fs::path> floats;  // JSONL {"doc"?, "page", "kind", "caption"}
  fs::path out;                    // JSONL {"doc", "page", "markdown", "score", "accepted"}
};

struct PairSummary {
  std::size_t documents = 0;
  std::size_t documents_failed = 0;
  std::size_t pages_total = 0;
  std::size_t pages_accepted = 0;

  double acceptance_rate() const;
  std::string to_json() const;
};

PairSummary run_pair(const PairInputs& inputs, const PipelineConfig& config,
                     const RunOptions& options = {});

/// Applies the augmentation pipeline to each PNG and writes the result
/// under the same file name into `out_dir`. Image k uses seed
/// derive_seed(config.seed, k).
std::size_t run_augment(const std::vector<fs::path>& images,
                        const fs::path& out_dir, const PipelineConfig& config,
                        const RunOptions& options = {});

struct DetectSummary {
  std::size_t traces = 0;
  std::size_t repeating = 0;
  std::size_t skipped = 0;

  double repetition_rate() const;
  std::string to_json() const;
};

/// Reads JSONL {"logits": [number...]} and writes one verdict per valid
/// line. Malformed lines are skipped with a warning.
DetectSummary run_detect(const fs::path& traces, const fs::path& out,
                         const PipelineConfig& config,
                         const RunOptions& options = {});

struct EvaluateSummary {
  MetricAccumulator metrics;
  std::size_t skipped = 0;

  std::string to_json() const;
};

/// Reads JSONL {"pred", "ref"} and writes one per-modality report per
/// valid line. Malformed lines are skipped with a warning.
EvaluateSummary run_evaluate(const fs::path& pairs, const fs::path& out,
                             const PipelineConfig& config,
                             const RunOptions& options = {});

/// Column names used in every metrics JSON object.
std::vector<std::string> metric_columns();

}  // namespace docpair
