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
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <vector>

namespace docpair {

struct RepetitionParams {
  std::size_t window = 15;           // B
  double threshold = 6.75;           // offline VarEnd threshold
  std::size_t online_window = 200;   // trailing tokens checked online
  double online_threshold = 3.375;   // half the offline threshold
  /// VarEnd positions are only judged while their suffix still holds at
  /// least this many VarWin samples (0 means 3 * window). The final sample
  /// is a single-point variance and always 0.
  std::size_t min_tail = 0;

  std::size_t effective_min_tail() const {
    return min_tail == 0 ? 3 * window : min_tail;
  }
};

struct RepetitionVerdict {
  bool repeating = false;
  std::optional<std::size_t> onset;  // present iff repeating

  bool operator==(const RepetitionVerdict&) const = default;
};

/// Population variance of every length-`window` slice; size S - B + 1.
/// Throws std::invalid_argument when the trace is shorter than the window
/// or the window is below 2.
std::vector<double> var_win(std::span<const double> trace, std::size_t window);

/// Population variance of each suffix of `signal`.
std::vector<double> var_end(std::span<const double> signal);

/// Repetition iff VarEnd drops below the threshold and stays below to the
/// end of the judged range; onset is the first index of that final run.
/// Needs at least window + 1 values.
RepetitionVerdict detect_offline(std::span<const double> trace,
                                 const RepetitionParams& params = {});

/// Offline rule on the trailing window with the online threshold. False
/// while fewer than window + 1 values are available.
bool detect_online(std::span<const double> recent,
                   const RepetitionParams& params = {});

/// Streaming detector owned by one generation loop. Keeps the last
/// `online_window` logits and reports whether generation should stop.
class OnlineRepetitionDetector {
 public:
  explicit OnlineRepetitionDetector(RepetitionParams params = {});

  /// Adds the next max-logit and returns the stop signal.
  bool push(double max_logit);
  std::size_t seen() const { return seen_; }

 private:
  RepetitionParams params_;
  std::deque<double> recent_;
  std::deque<double> win_var_;  // VarWin of the trailing windows
  std::size_t seen_ = 0;
};

enum class TraceKind { kClean, kRepeatAfter, kAlternating };

struct TraceSpec {
  TraceKind kind = TraceKind::kClean;
  std::size_t length = 1000;
  std::size_t repeat_start = 300;  // kRepeatAfter
  std::size_t period = 40;         // kRepeatAfter, kAlternating
  double noise_sigma = 0.1;        // jitter on the periodic part
  std::uint64_t seed = 0;
};

/// Synthetic max-logit trace. Clean traces are i.i.d. noise around a
/// slowly drifting mean; repeat_after appends an exact cycle (plus jitter)
/// after a clean prefix; alternating switches between two cycles with
/// occasional changed tokens after a clean third.
std::vector<double> gen_synthetic_trace(const TraceSpec& spec);

}  // namespace docpair
