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

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "docpair/aligner.hpp"
#include "docpair/augment.hpp"
#include "docpair/repetition.hpp"

namespace docpair {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PipelineConfig {
  std::uint64_t seed = 0;
  AlignParams align;
  AugmentConfig augment;
  RepetitionParams detector;
  std::string edit_normalizer = "max";  // the only supported value

  /// Throws ConfigError when a value is outside its module's range.
  void validate() const;
};

/// Sets one key. Throws ConfigError for unknown keys or bad values.
void set_config_value(PipelineConfig& config, std::string_view key,
                      std::string_view value);

/// Reads `key = value` lines; `#` starts a comment. The result is
/// validated.
PipelineConfig parse_config(std::string_view text);
PipelineConfig load_config(const std::filesystem::path& path);

/// Every accepted key, in file order.
std::vector<std::string> config_keys();

/// Canonical text form; parse_config(format_config(c)) reproduces c.
std::string format_config(const PipelineConfig& config);

}  // namespace docpair
