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

#include "docpair/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>
#include <type_traits>
#include <variant>

namespace docpair {
namespace {

static_assert(std::is_same_v<std::size_t, std::uint64_t>,
              "size_t fields share the 64-bit parser");
using Field = std::variant<std::uint64_t*, int*, double*, std::string*>;

struct Entry {
  std::string_view key;
  std::function<Field(PipelineConfig&)> field;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> kEntries = {
      {"seed", [](PipelineConfig& c) -> Field { return &c.seed; }},
      {"aligner.window", [](PipelineConfig& c) -> Field { return &c.align.refine.window; }},
      {"aligner.max_distance_ratio",
       [](PipelineConfig& c) -> Field { return &c.align.refine.max_distance_ratio; }},
      {"aligner.fragment_chars",
       [](PipelineConfig& c) -> Field { return &c.align.refine.fragment_chars; }},
      {"aligner.float_distance_ratio",
       [](PipelineConfig& c) -> Field { return &c.align.float_distance_ratio; }},
      {"svm.lambda", [](PipelineConfig& c) -> Field { return &c.align.svm.lambda; }},
      {"svm.epochs", [](PipelineConfig& c) -> Field { return &c.align.svm.epochs; }},
      {"augment.erosion_probability",
       [](PipelineConfig& c) -> Field { return &c.augment.erosion_probability; }},
      {"augment.dilation_probability",
       [](PipelineConfig& c) -> Field { return &c.augment.dilation_probability; }},
      {"augment.noise_probability",
       [](PipelineConfig& c) -> Field { return &c.augment.noise_probability; }},
      {"augment.blur_probability",
       [](PipelineConfig& c) -> Field { return &c.augment.blur_probability; }},
      {"augment.bitmap_probability",
       [](PipelineConfig& c) -> Field { return &c.augment.bitmap_probability; }},
      {"augment.compression_probability",
       [](PipelineConfig& c) -> Field { return &c.augment.compression_probability; }},
      {"augment.grid_probability",
       [](PipelineConfig& c) -> Field { return &c.augment.grid_probability; }},
      {"augment.elastic_probability",
       [](PipelineConfig& c) -> Field { return &c.augment.elastic_probability; }},
      {"augment.erosion_kernel",
       [](PipelineConfig& c) -> Field { return &c.augment.erosion_kernel; }},
      {"augment.dilation_kernel",
       [](PipelineConfig& c) -> Field { return &c.augment.dilation_kernel; }},
      {"augment.noise_sigma", [](PipelineConfig& c) -> Field { return &c.augment.noise_sigma; }},
      {"augment.blur_sigma", [](PipelineConfig& c) -> Field { return &c.augment.blur_sigma; }},
      {"augment.bitmap_threshold",
       [](PipelineConfig& c) -> Field { return &c.augment.bitmap_threshold; }},
      {"augment.compression_quality",
       [](PipelineConfig& c) -> Field { return &c.augment.compression_quality; }},
      {"augment.grid_cells", [](PipelineConfig& c) -> Field { return &c.augment.grid_cells; }},
      {"augment.grid_distort",
       [](PipelineConfig& c) -> Field { return &c.augment.grid_distort; }},
      {"augment.elastic_alpha",
       [](PipelineConfig& c) -> Field { return &c.augment.elastic_alpha; }},
      {"augment.elastic_sigma",
       [](PipelineConfig& c) -> Field { return &c.augment.elastic_sigma; }},
      {"detector.window", [](PipelineConfig& c) -> Field { return &c.detector.window; }},
      {"detector.threshold", [](PipelineConfig& c) -> Field { return &c.detector.threshold; }},
      {"detector.online_window",
       [](PipelineConfig& c) -> Field { return &c.detector.online_window; }},
      {"detector.online_threshold",
       [](PipelineConfig& c) -> Field { return &c.detector.online_threshold; }},
      {"detector.min_tail", [](PipelineConfig& c) -> Field { return &c.detector.min_tail; }},
      {"metrics.edit_normalizer",
       [](PipelineConfig& c) -> Field { return &c.edit_normalizer; }},
  };
  return kEntries;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || value.empty())
    throw ConfigError("invalid value '" + std::string(value) + "' for " +
                      std::string(key));
  return out;
}

template <typename T>
std::string format_number(T value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  (void)ec;
  return std::string(buf, ptr);
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

}  // namespace

void PipelineConfig::validate() const {
  const RefineParams& r = align.refine;
  require(r.window >= 1, "aligner.window must be >= 1");
  require(r.max_distance_ratio >= 0.0 && r.max_distance_ratio < 1.0,
          "aligner.max_distance_ratio must be in [0, 1)");
  require(r.fragment_chars >= 1, "aligner.fragment_chars must be >= 1");
  require(align.float_distance_ratio >= 0.0 && align.float_distance_ratio <= 1.0,
          "aligner.float_distance_ratio must be in [0, 1]");
  require(align.svm.lambda > 0.0, "svm.lambda must be positive");
  require(align.svm.epochs >= 1, "svm.epochs must be >= 1");
  try {
    augment.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("augment: ") + e.what());
  }
  require(detector.window >= 2, "detector.window must be >= 2");
  require(detector.threshold > 0.0, "detector.threshold must be positive");
  require(detector.online_window > detector.window,
          "detector.online_window must exceed detector.window");
  require(detector.online_threshold > 0.0,
          "detector.online_threshold must be positive");
  require(edit_normalizer == "max", "metrics.edit_normalizer must be 'max'");
}

void set_config_value(PipelineConfig& config, std::string_view key,
                      std::string_view value) {
  for (const auto& entry : entries()) {
    if (entry.key != key) continue;
    std::visit(
        [&](auto* field) {
          using T = std::remove_pointer_t<decltype(field)>;
          if constexpr (std::is_same_v<T, std::string>) {
            *field = std::string(value);
          } else {
            *field = parse_number<T>(key, value);
          }
        },
        entry.field(config));
    return;
  }
  throw ConfigError("unknown key '" + std::string(key) + "'");
}

PipelineConfig parse_config(std::string_view text) {
  PipelineConfig config;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    try {
      set_config_value(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  config.validate();
  return config;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& entry : entries()) keys.emplace_back(entry.key);
  return keys;
}

std::string format_config(const PipelineConfig& config) {
  PipelineConfig copy = config;
  std::string out;
  for (const auto& entry : entries()) {
    out += entry.key;
    out += " = ";
    out += std::visit(
        [](auto* field) -> std::string {
          using T = std::remove_pointer_t<decltype(field)>;
          if constexpr (std::is_same_v<T, std::string>) {
            return *field;
          } else {
            return format_number(*field);
          }
        },
        entry.field(copy));
    out += '\n';
  }
  return out;
}

}  // namespace docpair
