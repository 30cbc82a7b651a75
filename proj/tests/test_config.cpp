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

#include "docpair/config.hpp"

using namespace docpair;

TEST_CASE("defaults are valid and round trip through text") {
  const PipelineConfig defaults;
  CHECK_NOTHROW(defaults.validate());
  const PipelineConfig back = parse_config(format_config(defaults));
  CHECK(format_config(back) == format_config(defaults));
  CHECK(back.detector.threshold == 6.75);
  CHECK(back.detector.window == 15);
  CHECK(back.align.refine.window == 2000);
}

TEST_CASE("values, comments and blank lines") {
  const auto c = parse_config(
      "# run settings\n"
      "seed = 18446744073709551615\n"
      "\n"
      "aligner.max_distance_ratio = 0.25   # tighter\n"
      "augment.noise_probability=0.5\r\n"
      "detector.window = 20\n");
  CHECK(c.seed == 18446744073709551615ull);
  CHECK(c.align.refine.max_distance_ratio == 0.25);
  CHECK(c.augment.noise_probability == 0.5);
  CHECK(c.detector.window == 20);
}

TEST_CASE("unknown keys and bad values are rejected") {
  CHECK_THROWS_AS(parse_config("nope = 1"), ConfigError);
  CHECK_THROWS_AS(parse_config("seed = -1"), ConfigError);
  CHECK_THROWS_AS(parse_config("seed = 12abc"), ConfigError);
  CHECK_THROWS_AS(parse_config("seed"), ConfigError);
  CHECK_THROWS_AS(parse_config("augment.blur_probability = 2"), ConfigError);
  CHECK_THROWS_AS(parse_config("augment.erosion_kernel = 4"), ConfigError);
  CHECK_THROWS_AS(parse_config("detector.window = 1"), ConfigError);
  CHECK_THROWS_AS(parse_config("detector.online_window = 10"), ConfigError);
  CHECK_THROWS_AS(parse_config("svm.lambda = 0"), ConfigError);
  CHECK_THROWS_AS(parse_config("metrics.edit_normalizer = sum"), ConfigError);
  try {
    parse_config("seed = 1\nbogus = 2\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("numeric keys reject text") {
  for (const auto& key : config_keys()) {
    if (key == "metrics.edit_normalizer") continue;
    PipelineConfig c;
    CHECK_THROWS_AS(set_config_value(c, key, "x"), ConfigError);
  }
  CHECK(config_keys().size() >= 30);
}

TEST_CASE("missing config file") {
  CHECK_THROWS_AS(load_config("/nonexistent/docpair.conf"), ConfigError);
}
