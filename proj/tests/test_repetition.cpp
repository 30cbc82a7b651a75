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

#include "docpair/repetition.hpp"
#include "oracles.hpp"

using namespace docpair;

namespace {

std::vector<double> uniform_trace(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> out(n);
  for (auto& v : out) v = u(rng);
  return out;
}

std::vector<double> cycled(std::size_t prefix, std::size_t period, std::size_t total,
                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto out = uniform_trace(rng, prefix, 0.0, 20.0);
  const auto cycle = uniform_trace(rng, period, 12.0, 17.0);
  for (std::size_t k = 0; out.size() < total; ++k) out.push_back(cycle[k % period]);
  return out;
}

}  // namespace

TEST_CASE("var_win spot values and errors") {
  CHECK(var_win(std::vector<double>(20, 3.0), 15) == std::vector<double>(6, 0.0));
  const std::vector<double> alt = {0, 2, 0, 2, 0};
  CHECK(var_win(alt, 2) == std::vector<double>(4, 1.0));
  CHECK_THROWS_AS(var_win(alt, 1), std::invalid_argument);
  CHECK_THROWS_AS(var_win(alt, 6), std::invalid_argument);
}

TEST_CASE("var_end spot values") {
  const std::vector<double> two = {0, 2};
  const auto e = var_end(two);
  REQUIRE(e.size() == 2);
  CHECK(e[0] == doctest::Approx(1.0));
  CHECK(e[1] == 0.0);
  CHECK(var_end(std::vector<double>(5, 4.0)) == std::vector<double>(5, 0.0));
}

TEST_CASE("var_win and var_end match brute force") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const auto trace = uniform_trace(rng, 50 + rng() % 400, -5.0, 25.0);
    const auto w = var_win(trace, 15);
    REQUIRE(w.size() == trace.size() - 14);
    for (std::size_t x = 0; x < w.size(); ++x)
      CHECK(std::abs(w[x] - oracle::variance(trace, x, x + 15)) < 1e-9);
    const auto e = var_end(w);
    for (std::size_t x = 0; x < e.size(); ++x)
      CHECK(std::abs(e[x] - oracle::variance(w, x, w.size())) < 1e-9);
  }
}

TEST_CASE("offline detection on noise, cycles and constants") {
  std::mt19937_64 rng(13);
  const auto noise = uniform_trace(rng, 1000, 0.0, 20.0);
  CHECK_FALSE(detect_offline(noise).repeating);
  CHECK_FALSE(detect_offline(noise).onset);

  const auto rep = cycled(300, 40, 1000, 5);
  const auto v = detect_offline(rep);
  REQUIRE(v.repeating);
  REQUIRE(v.onset);
  CHECK(std::abs(static_cast<long>(*v.onset) - 300) <= 60);

  const auto flat = detect_offline(std::vector<double>(100, 7.0));
  CHECK(flat.repeating);
  CHECK(flat.onset == std::optional<std::size_t>(0));

  CHECK_THROWS_AS(detect_offline(std::vector<double>(15, 1.0)), std::invalid_argument);
}

TEST_CASE("shift invariance and scale covariance") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 10; ++trial) {
    const auto trace = trial % 2 ? cycled(200, 30, 600, rng()) : uniform_trace(rng, 600, 0, 20);
    auto shifted = trace;
    for (auto& v : shifted) v += 1000.0;
    const auto w = var_win(trace, 15);
    const auto ws = var_win(shifted, 15);
    for (std::size_t k = 0; k < w.size(); ++k) CHECK(std::abs(w[k] - ws[k]) < 1e-6);
    CHECK(detect_offline(trace) == detect_offline(shifted));
    CHECK(detect_online(trace) == detect_online(shifted));

    auto scaled = trace;
    for (auto& v : scaled) v *= 3.0;
    const auto wk = var_win(scaled, 15);
    for (std::size_t k = 0; k < w.size(); ++k) CHECK(std::abs(9.0 * w[k] - wk[k]) < 1e-9 * (1 + wk[k]));
  }
}

TEST_CASE("monotone evidence under further repetition") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto trace = cycled(300, 40, 700, seed);
    if (!detect_offline(trace).repeating) continue;
    auto longer = trace;
    for (std::size_t k = 0; k < 400; ++k) longer.push_back(longer[longer.size() - 40]);
    CHECK(detect_offline(longer).repeating);
  }
}

TEST_CASE("online detection and the streaming detector") {
  std::vector<double> ten(10, 1.0);
  CHECK_FALSE(detect_online(ten));
  const auto rep = cycled(300, 40, 800, 8);
  CHECK(detect_online(std::span<const double>(rep).subspan(rep.size() - 200)));
  std::mt19937_64 rng(15);
  const auto noise = uniform_trace(rng, 200, 0.0, 20.0);
  CHECK_FALSE(detect_online(noise));

  // The streaming detector agrees with the windowed rule at every step.
  for (const auto& trace : {rep, uniform_trace(rng, 600, 0.0, 20.0)}) {
    OnlineRepetitionDetector detector;
    for (std::size_t k = 0; k < trace.size(); ++k) {
      const bool flag = detector.push(trace[k]);
      const std::size_t begin = k + 1 > 200 ? k + 1 - 200 : 0;
      const std::span<const double> window(trace.data() + begin, k + 1 - begin);
      REQUIRE(flag == detect_online(window));
    }
    CHECK(detector.seen() == trace.size());
  }
}

TEST_CASE("synthetic traces") {
  CHECK_THROWS_AS(gen_synthetic_trace({TraceKind::kClean, 0}), std::invalid_argument);
  TraceSpec spec{TraceKind::kRepeatAfter, 1000, 300, 40, 0.0, 9};
  const auto t = gen_synthetic_trace(spec);
  REQUIRE(t.size() == 1000);
  for (std::size_t k = 340; k < t.size(); ++k) CHECK(t[k] == t[k - 40]);
  CHECK(gen_synthetic_trace(spec) == t);
  spec.seed = 10;
  CHECK_FALSE(gen_synthetic_trace(spec) == t);

  std::size_t flagged_clean = 0;
  std::size_t flagged_rep = 0;
  std::size_t flagged_alt = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    flagged_clean += detect_offline(gen_synthetic_trace({TraceKind::kClean, 1000, 300, 40, 0.1, seed})).repeating;
    flagged_rep += detect_offline(gen_synthetic_trace({TraceKind::kRepeatAfter, 1000, 300, 40, 0.1, seed})).repeating;
    flagged_alt += detect_offline(gen_synthetic_trace({TraceKind::kAlternating, 1000, 300, 40, 0.1, seed})).repeating;
  }
  CHECK(flagged_clean <= 2);
  CHECK(flagged_rep >= 48);
  MESSAGE("alternating traces flagged: " << flagged_alt << "/50");
}
