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

#include "docpair/repetition.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "docpair/random.hpp"

namespace docpair {
namespace {

double window_variance(std::span<const double> values) {
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double acc = 0.0;
  for (double v : values) acc += (v - mean) * (v - mean);
  return acc / static_cast<double>(values.size());
}

RepetitionVerdict judge(std::span<const double> varend, double threshold,
                        std::size_t min_tail) {
  RepetitionVerdict verdict;
  if (varend.empty()) return verdict;
  const std::size_t tail = std::clamp<std::size_t>(min_tail, 1, varend.size());
  std::size_t x = varend.size() - tail;
  if (varend[x] >= threshold) return verdict;
  while (x > 0 && varend[x - 1] < threshold) --x;
  verdict.repeating = true;
  verdict.onset = x;
  return verdict;
}

}  // namespace

std::vector<double> var_win(std::span<const double> trace, std::size_t window) {
  if (window < 2) throw std::invalid_argument("window must be >= 2");
  if (trace.size() < window)
    throw std::invalid_argument("trace of length " + std::to_string(trace.size()) +
                                " is shorter than the window " +
                                std::to_string(window));
  std::vector<double> out(trace.size() - window + 1);
  for (std::size_t x = 0; x < out.size(); ++x)
    out[x] = window_variance(trace.subspan(x, window));
  return out;
}

std::vector<double> var_end(std::span<const double> signal) {
  std::vector<double> out(signal.size());
  // Welford, growing the suffix one element to the left at a time.
  double mean = 0.0, m2 = 0.0;
  std::size_t n = 0;
  for (std::size_t k = signal.size(); k-- > 0;) {
    ++n;
    const double delta = signal[k] - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (signal[k] - mean);
    out[k] = std::max(0.0, m2 / static_cast<double>(n));
  }
  return out;
}

RepetitionVerdict detect_offline(std::span<const double> trace,
                                 const RepetitionParams& params) {
  if (trace.size() < params.window + 1)
    throw std::invalid_argument("trace needs at least window + 1 values");
  const auto varend = var_end(var_win(trace, params.window));
  return judge(varend, params.threshold, params.effective_min_tail());
}

bool detect_online(std::span<const double> recent,
                   const RepetitionParams& params) {
  if (recent.size() > params.online_window)
    recent = recent.subspan(recent.size() - params.online_window);
  if (recent.size() < params.window + 1) return false;
  const auto varend = var_end(var_win(recent, params.window));
  return judge(varend, params.online_threshold, params.effective_min_tail())
      .repeating;
}

OnlineRepetitionDetector::OnlineRepetitionDetector(RepetitionParams params)
    : params_(params) {
  if (params_.window < 2) throw std::invalid_argument("window must be >= 2");
  if (params_.online_window < params_.window + 1)
    throw std::invalid_argument("online window must exceed the variance window");
}

bool OnlineRepetitionDetector::push(double max_logit) {
  ++seen_;
  recent_.push_back(max_logit);
  if (recent_.size() > params_.online_window) recent_.pop_front();
  if (recent_.size() >= params_.window) {
    std::vector<double> last(recent_.end() - static_cast<long>(params_.window),
                             recent_.end());
    win_var_.push_back(window_variance(last));
  }
  while (win_var_.size() > recent_.size() - std::min(recent_.size(), params_.window - 1))
    win_var_.pop_front();
  if (recent_.size() < params_.window + 1) return false;

  const std::vector<double> signal(win_var_.begin(), win_var_.end());
  const auto varend = var_end(signal);
  return judge(varend, params_.online_threshold, params_.effective_min_tail())
      .repeating;
}

std::vector<double> gen_synthetic_trace(const TraceSpec& spec) {
  if (spec.length == 0) throw std::invalid_argument("trace length must be >= 1");
  if (spec.kind != TraceKind::kClean && spec.period == 0)
    throw std::invalid_argument("period must be >= 1");
  Rng rng(spec.seed);
  std::vector<double> out;
  out.reserve(spec.length);

  double mean = 10.0;
  auto clean_value = [&] {
    mean = std::clamp(mean + 0.05 * standard_normal(rng), 5.0, 15.0);
    return mean + uniform(rng, -10.0, 10.0);
  };
  auto make_cycle = [&](std::size_t period) {
    std::vector<double> cycle(period);
    const double level = mean + 2.0;
    for (double& v : cycle) v = level + uniform(rng, 0.0, 5.0);
    return cycle;
  };

  switch (spec.kind) {
    case TraceKind::kClean:
      while (out.size() < spec.length) out.push_back(clean_value());
      break;
    case TraceKind::kRepeatAfter: {
      while (out.size() < std::min(spec.length, spec.repeat_start))
        out.push_back(clean_value());
      const auto cycle = make_cycle(spec.period);
      for (std::size_t k = 0; out.size() < spec.length; ++k)
        out.push_back(cycle[k % cycle.size()] +
                      spec.noise_sigma * standard_normal(rng));
      break;
    }
    case TraceKind::kAlternating: {
      const std::size_t prefix = spec.length / 3;
      while (out.size() < prefix) out.push_back(clean_value());
      const auto a = make_cycle(spec.period);
      const auto b = make_cycle(spec.period + spec.period / 4 + 1);
      bool use_a = true;
      while (out.size() < spec.length) {
        const auto& cycle = use_a ? a : b;
        for (std::size_t k = 0; k < cycle.size() && out.size() < spec.length; ++k) {
          double v = cycle[k];
          // Occasionally a changed word.
          if (uniform01(rng) < 0.05) v = mean + 2.0 + uniform(rng, 0.0, 5.0);
          out.push_back(v + spec.noise_sigma * standard_normal(rng));
        }
        use_a = !use_a;
      }
      break;
    }
  }
  return out;
}

}  // namespace docpair
