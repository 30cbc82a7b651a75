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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "docpair/config.hpp"
#include "docpair/pipeline.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;

}  // namespace

int main(int argc, char** argv) {
  using namespace docpair;

  CLI::App app{"Paired page corpus construction, augmentation, repetition "
               "detection and evaluation"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::size_t jobs = 0;
  app.add_option("--config", config_path, "key = value configuration file")
      ->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "64-bit seed (overrides the config file)");
  app.add_option("--jobs", jobs, "worker threads (0 = logical CPUs)");

  std::vector<std::string> inputs;
  std::string out;

  auto* convert = app.add_subcommand("convert", "HTML to markup");
  convert->add_option("html", inputs, "HTML files")->required();
  convert->add_option("-o,--out", out, "output file (one input) or directory")
      ->required();

  std::string pdf_text;
  std::string floats;
  auto* pair = app.add_subcommand("pair", "split markup into PDF pages");
  pair->add_option("html", inputs, "HTML files");
  pair->add_option("--pdf-text", pdf_text, "JSONL page text")->required();
  pair->add_option("--floats", floats, "JSONL caption records");
  pair->add_option("-o,--out", out, "output JSONL")->required();

  auto* augment = app.add_subcommand("augment", "augment page images");
  augment->add_option("images", inputs, "PNG files")->required();
  augment->add_option("-o,--out", out, "output directory")->required();

  std::string traces;
  auto* detect = app.add_subcommand("detect", "flag repetition in logit traces");
  detect->add_option("traces", traces, "JSONL traces")->required();
  detect->add_option("-o,--out", out, "output JSONL")->required();

  std::string pairs;
  auto* evaluate = app.add_subcommand("evaluate", "score predictions per modality");
  evaluate->add_option("pairs", pairs, "JSONL pred/ref pairs")->required();
  evaluate->add_option("-o,--out", out, "per-sample JSONL")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    PipelineConfig config = config_path.empty() ? PipelineConfig{} : load_config(config_path);
    if (seed) config.seed = *seed;
    config.validate();
    RunOptions options;
    options.jobs = jobs;

    auto paths = [&] {
      std::vector<fs::path> out_paths(inputs.begin(), inputs.end());
      return out_paths;
    };

    if (*convert) {
      run_convert(paths(), out);
    } else if (*pair) {
      PairInputs in;
      in.html = paths();
      in.pdf_text = pdf_text;
      if (!floats.empty()) in.floats = fs::path(floats);
      in.out = out;
      std::cout << run_pair(in, config, options).to_json() << '\n';
    } else if (*augment) {
      run_augment(paths(), out, config, options);
    } else if (*detect) {
      std::cout << run_detect(traces, out, config, options).to_json() << '\n';
    } else if (*evaluate) {
      std::cout << run_evaluate(pairs, out, config, options).to_json() << '\n';
    }
  } catch (const ConfigError& e) {
    std::cerr << "docpair: config: " << e.what() << '\n';
    return kExitInput;
  } catch (const InputError& e) {
    std::cerr << "docpair: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "docpair: " << e.what() << '\n';
    return kExitInput;
  }
  return 0;
}
