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

#include "docpair/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "docpair/aligner.hpp"
#include "docpair/augment.hpp"
#include "docpair/error.hpp"
#include "docpair/image.hpp"
#include "docpair/markup.hpp"
#include "docpair/random.hpp"
#include "docpair/repetition.hpp"

namespace docpair {
namespace {

using json = nlohmann::ordered_json;

constexpr std::size_t kBatchPerWorker = 64;

std::size_t worker_count(const RunOptions& options) {
  if (options.jobs != 0) return options.jobs;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

std::ostream& warn_stream(const RunOptions& options) {
  return options.warnings ? *options.warnings : std::cerr;
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads; rethrows the first
// failure by index after all workers finish.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t jobs, Fn&& fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  const std::size_t count = std::min(jobs, n);
  threads.reserve(count);
  for (std::size_t t = 0; t < count; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::string dump_line(const json& j) {
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot read file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError(path.string() + ": cannot write file");
  return out;
}

// Streams JSONL lines; blank lines are ignored.
class JsonlReader {
 public:
  explicit JsonlReader(const fs::path& path) : path_(path), in_(path, std::ios::binary) {
    if (!in_) throw InputError(path.string() + ": cannot read file");
  }

  // Returns false at end of input. `error` is set when the line is not a
  // JSON object.
  bool next(json& value, std::string& error) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      error.clear();
      try {
        value = json::parse(line);
        if (!value.is_object()) error = "expected a JSON object";
      } catch (const json::exception& e) {
        error = e.what();
      }
      return true;
    }
    return false;
  }

  std::string where() const {
    return path_.string() + ":" + std::to_string(line_no_);
  }

 private:
  fs::path path_;
  std::ifstream in_;
  std::size_t line_no_ = 0;
};

json metrics_json(const std::optional<MetricValues>& v) {
  if (!v) return nullptr;
  json j;
  j["edit_distance"] = v->edit_distance;
  j["bleu"] = v->bleu;
  j["meteor (exact+stem)"] = v->meteor;
  j["precision"] = v->precision;
  j["recall"] = v->recall;
  j["f1"] = v->f1;
  return j;
}

std::optional<MetricValues> values_of(const std::optional<PairScore>& s) {
  if (!s) return std::nullopt;
  return s->values;
}

// ---- pair ------------------------------------------------------------

struct DocumentInput {
  std::string id;
  fs::path html;
  std::map<int, std::vector<std::string>> pages;
  std::vector<FloatRecord> floats;
};

std::string doc_key(const json& record, const std::vector<DocumentInput>& docs,
                    const std::string& where) {
  if (record.contains("doc")) {
    if (!record["doc"].is_string())
      throw InputError(where + ": \"doc\" must be a string");
    return record["doc"].get<std::string>();
  }
  if (docs.size() != 1)
    throw InputError(where + ": record without \"doc\" key but " +
                     std::to_string(docs.size()) + " documents");
  return docs.front().id;
}

int page_number(const json& record, const std::string& where) {
  if (!record.contains("page") || !record["page"].is_number_integer())
    throw InputError(where + ": \"page\" must be an integer");
  const auto page = record["page"].get<std::int64_t>();
  if (page < 1 || page > 100000)
    throw InputError(where + ": page " + std::to_string(page) + " out of range");
  return static_cast<int>(page);
}

DocumentInput* find_doc(std::vector<DocumentInput>& docs,
                        const std::map<std::string, std::size_t>& index,
                        const std::string& key, const std::string& where,
                        std::ostream& warnings) {
  auto it = index.find(key);
  if (it == index.end()) {
    warnings << where << ": no HTML document named '" << key << "', record ignored\n";
    return nullptr;
  }
  return &docs[it->second];
}

void load_pdf_text(const fs::path& path, std::vector<DocumentInput>& docs,
                   const std::map<std::string, std::size_t>& index,
                   std::ostream& warnings) {
  JsonlReader reader(path);
  json record;
  std::string error;
  while (reader.next(record, error)) {
    const std::string where = reader.where();
    if (!error.empty()) throw InputError(where + ": " + error);
    const std::string key = doc_key(record, docs, where);
    const int page = page_number(record, where);
    if (!record.contains("lines") || !record["lines"].is_array())
      throw InputError(where + ": \"lines\" must be an array of strings");
    std::vector<std::string> lines;
    for (const auto& line : record["lines"]) {
      if (!line.is_string())
        throw InputError(where + ": \"lines\" must be an array of strings");
      lines.push_back(line.get<std::string>());
    }
    DocumentInput* doc = find_doc(docs, index, key, where, warnings);
    if (!doc) continue;
    if (!doc->pages.emplace(page, std::move(lines)).second)
      throw InputError(where + ": duplicate page " + std::to_string(page) +
                       " for document '" + key + "'");
  }
}

void load_floats(const fs::path& path, std::vector<DocumentInput>& docs,
                 const std::map<std::string, std::size_t>& index,
                 std::ostream& warnings) {
  JsonlReader reader(path);
  json record;
  std::string error;
  while (reader.next(record, error)) {
    const std::string where = reader.where();
    if (!error.empty()) throw InputError(where + ": " + error);
    const std::string key = doc_key(record, docs, where);
    FloatRecord rec;
    rec.page_index = page_number(record, where);
    if (!record.contains("caption") || !record["caption"].is_string())
      throw InputError(where + ": \"caption\" must be a string");
    rec.caption_text = record["caption"].get<std::string>();
    const std::string kind =
        record.contains("kind") && record["kind"].is_string()
            ? record["kind"].get<std::string>()
            : std::string();
    if (kind == "figure") {
      rec.kind = FloatKind::kFigure;
    } else if (kind == "table") {
      rec.kind = FloatKind::kTable;
    } else {
      throw InputError(where + ": \"kind\" must be \"figure\" or \"table\"");
    }
    if (DocumentInput* doc = find_doc(docs, index, key, where, warnings))
      doc->floats.push_back(std::move(rec));
  }
}

struct DocumentResult {
  std::vector<std::string> lines;
  std::size_t pages = 0;
  std::size_t accepted = 0;
  bool failed = false;
};

DocumentResult pair_document(const DocumentInput& doc, const PipelineConfig& config,
                             std::size_t doc_index) {
  DocumentResult result;
  std::vector<std::vector<std::string>> pdf_pages;
  if (!doc.pages.empty()) {
    pdf_pages.resize(static_cast<std::size_t>(doc.pages.rbegin()->first));
    for (const auto& [page, lines] : doc.pages)
      pdf_pages[static_cast<std::size_t>(page - 1)] = lines;
  }

  AlignedDocument aligned;
  if (pdf_pages.empty()) {
    aligned.error = "no PDF text";
  } else {
    try {
      const MarkupDocument markup = parse_html_subset(read_file(doc.html), doc.id);
      AlignParams params = config.align;
      params.svm.seed = derive_seed(config.seed, doc_index);
      aligned = align_document(markup, pdf_pages, doc.floats, params);
    } catch (const ParseError& e) {
      aligned.error = doc.html.string() + ": " + e.what();
      for (std::size_t p = 0; p < pdf_pages.size(); ++p)
        aligned.pages.push_back({static_cast<int>(p) + 1, "", 0.0, false});
    }
  }

  result.failed = !aligned.error.empty();
  for (const auto& page : aligned.pages) {
    json j;
    j["doc"] = doc.id;
    j["page"] = page.page;
    j["markdown"] = page.markdown;
    j["score"] = page.score;
    j["accepted"] = page.accepted;
    if (result.failed) j["error"] = aligned.error;
    result.lines.push_back(dump_line(j));
    ++result.pages;
    if (page.accepted) ++result.accepted;
  }
  return result;
}

}  // namespace

std::vector<std::string> metric_columns() {
  return {"edit_distance", "bleu", "meteor (exact+stem)", "precision", "recall", "f1"};
}

std::size_t run_convert(const std::vector<fs::path>& html_paths, const fs::path& out) {
  auto convert = [](const fs::path& path) {
    try {
      return serialize_markdown(parse_html_subset(read_file(path), path.stem().string()));
    } catch (const ParseError& e) {
      throw InputError(path.string() + ": " + e.what());
    }
  };
  if (html_paths.size() == 1) {
    const std::string markdown = convert(html_paths.front());
    auto stream = open_output(out);
    stream << markdown << '\n';
    return 1;
  }
  std::error_code ec;
  fs::create_directories(out, ec);
  if (!fs::is_directory(out))
    throw InputError(out.string() + ": not a directory");
  for (const auto& path : html_paths) {
    const std::string markdown = convert(path);
    auto stream = open_output(out / (path.stem().string() + ".md"));
    stream << markdown << '\n';
  }
  return html_paths.size();
}

double PairSummary::acceptance_rate() const {
  return pages_total == 0 ? 0.0
                          : static_cast<double>(pages_accepted) /
                                static_cast<double>(pages_total);
}

std::string PairSummary::to_json() const {
  json j;
  j["documents"] = documents;
  j["documents_failed"] = documents_failed;
  j["pages_total"] = pages_total;
  j["pages_accepted"] = pages_accepted;
  j["acceptance_rate"] = acceptance_rate();
  return j.dump(2);
}

PairSummary run_pair(const PairInputs& inputs, const PipelineConfig& config,
                     const RunOptions& options) {
  config.validate();
  std::ostream& warnings = warn_stream(options);
  std::vector<DocumentInput> docs;
  std::map<std::string, std::size_t> index;
  for (const auto& path : inputs.html) {
    DocumentInput doc;
    doc.id = path.stem().string();
    doc.html = path;
    if (!index.emplace(doc.id, docs.size()).second)
      throw InputError(path.string() + ": duplicate document name '" + doc.id + "'");
    docs.push_back(std::move(doc));
  }
  if (!docs.empty()) {
    load_pdf_text(inputs.pdf_text, docs, index, warnings);
    if (inputs.floats) load_floats(*inputs.floats, docs, index, warnings);
  }

  auto out = open_output(inputs.out);
  PairSummary summary;
  const std::size_t jobs = worker_count(options);
  const std::size_t batch = jobs * kBatchPerWorker;
  for (std::size_t start = 0; start < docs.size(); start += batch) {
    const std::size_t n = std::min(batch, docs.size() - start);
    std::vector<DocumentResult> results(n);
    parallel_for(n, jobs, [&](std::size_t k) {
      results[k] = pair_document(docs[start + k], config, start + k);
    });
    for (std::size_t k = 0; k < n; ++k) {
      for (const auto& line : results[k].lines) out << line << '\n';
      ++summary.documents;
      if (results[k].failed) ++summary.documents_failed;
      summary.pages_total += results[k].pages;
      summary.pages_accepted += results[k].accepted;
    }
  }
  return summary;
}

std::size_t run_augment(const std::vector<fs::path>& images, const fs::path& out_dir,
                        const PipelineConfig& config, const RunOptions& options) {
  config.validate();
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (!fs::is_directory(out_dir))
    throw InputError(out_dir.string() + ": not a directory");
  std::map<std::string, std::size_t> names;
  for (const auto& path : images)
    if (!names.emplace(path.filename().string(), 0).second)
      throw InputError(path.string() + ": duplicate output name");

  parallel_for(images.size(), worker_count(options), [&](std::size_t k) {
    GrayImage img = [&] {
      try {
        return read_png(images[k].string());
      } catch (const std::exception& e) {
        throw InputError(images[k].string() + ": " + e.what());
      }
    }();
    AugmentConfig augment = config.augment;
    augment.seed = derive_seed(config.seed, k);
    const GrayImage result = apply_pipeline(img, augment);
    try {
      write_png((out_dir / images[k].filename()).string(), result);
    } catch (const std::exception& e) {
      throw InputError(e.what());
    }
  });
  return images.size();
}

double DetectSummary::repetition_rate() const {
  return traces == 0 ? 0.0
                     : static_cast<double>(repeating) / static_cast<double>(traces);
}

std::string DetectSummary::to_json() const {
  json j;
  j["traces"] = traces;
  j["repeating"] = repeating;
  j["skipped"] = skipped;
  j["repetition_rate"] = repetition_rate();
  return j.dump(2);
}

DetectSummary run_detect(const fs::path& traces, const fs::path& out,
                         const PipelineConfig& config, const RunOptions& options) {
  config.validate();
  std::ostream& warnings = warn_stream(options);
  JsonlReader reader(traces);
  auto stream = open_output(out);
  DetectSummary summary;
  const std::size_t jobs = worker_count(options);
  const std::size_t batch = jobs * kBatchPerWorker;

  struct Item {
    std::vector<double> logits;
    json id;
  };
  bool more = true;
  while (more) {
    std::vector<Item> items;
    json record;
    std::string error;
    while (items.size() < batch && (more = reader.next(record, error))) {
      if (error.empty() && (!record.contains("logits") || !record["logits"].is_array()))
        error = "\"logits\" must be an array of numbers";
      Item item;
      if (error.empty()) {
        for (const auto& v : record["logits"]) {
          if (!v.is_number()) {
            error = "\"logits\" must be an array of numbers";
            break;
          }
          item.logits.push_back(v.get<double>());
        }
      }
      if (!error.empty()) {
        warnings << reader.where() << ": skipped: " << error << '\n';
        ++summary.skipped;
        continue;
      }
      if (record.contains("id")) item.id = record["id"];
      items.push_back(std::move(item));
    }

    std::vector<RepetitionVerdict> verdicts(items.size());
    parallel_for(items.size(), jobs, [&](std::size_t k) {
      if (items[k].logits.size() > config.detector.window)
        verdicts[k] = detect_offline(items[k].logits, config.detector);
    });
    for (std::size_t k = 0; k < items.size(); ++k) {
      json j;
      j["index"] = summary.traces;
      if (!items[k].id.is_null()) j["id"] = items[k].id;
      j["repeating"] = verdicts[k].repeating;
      j["onset"] = verdicts[k].onset ? json(*verdicts[k].onset) : json(nullptr);
      stream << dump_line(j) << '\n';
      ++summary.traces;
      if (verdicts[k].repeating) ++summary.repeating;
    }
  }
  return summary;
}

std::string EvaluateSummary::to_json() const {
  json j;
  j["samples"] = metrics.samples();
  j["skipped"] = skipped;
  j["columns"] = metric_columns();
  json counts;
  json corpus;
  json mean;
  for (Modality m : kModalities) {
    const std::string name(modality_name(m));
    counts[name] = metrics.count(m);
    corpus[name] = metrics_json(metrics.corpus(m));
    mean[name] = metrics_json(metrics.mean(m));
  }
  j["counts"] = counts;
  j["corpus"] = corpus;
  j["mean"] = mean;
  return j.dump(2);
}

EvaluateSummary run_evaluate(const fs::path& pairs, const fs::path& out,
                             const PipelineConfig& config, const RunOptions& options) {
  config.validate();
  std::ostream& warnings = warn_stream(options);
  JsonlReader reader(pairs);
  auto stream = open_output(out);
  EvaluateSummary summary;
  const std::size_t jobs = worker_count(options);
  const std::size_t batch = jobs * kBatchPerWorker;

  struct Item {
    std::string pred;
    std::string ref;
  };
  bool more = true;
  while (more) {
    std::vector<Item> items;
    json record;
    std::string error;
    while (items.size() < batch && (more = reader.next(record, error))) {
      if (error.empty() &&
          (!record.contains("pred") || !record["pred"].is_string() ||
           !record.contains("ref") || !record["ref"].is_string()))
        error = "\"pred\" and \"ref\" must be strings";
      if (!error.empty()) {
        warnings << reader.where() << ": skipped: " << error << '\n';
        ++summary.skipped;
        continue;
      }
      items.push_back({record["pred"].get<std::string>(), record["ref"].get<std::string>()});
    }

    std::vector<ModalityReport> reports(items.size());
    parallel_for(items.size(), jobs, [&](std::size_t k) {
      reports[k] = evaluate_sample(items[k].pred, items[k].ref);
    });
    for (const auto& report : reports) {
      json j;
      j["index"] = summary.metrics.samples();
      for (Modality m : kModalities)
        j[std::string(modality_name(m))] = metrics_json(values_of(report[m]));
      j["pred_fallback"] = report.pred_fallback;
      j["ref_fallback"] = report.ref_fallback;
      stream << dump_line(j) << '\n';
      summary.metrics.add(report);
    }
  }
  return summary;
}

}  // namespace docpair
