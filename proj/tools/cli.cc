// Copyright 2026 The hc3detect Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <type_traits>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "hc3detect/bridge_client.h"
#include "hc3detect/corpus.h"
#include "hc3detect/experiment.h"
#include "hc3detect/features.h"
#include "hc3detect/lexicon.h"
#include "hc3detect/logistic_regression.h"
#include "hc3detect/metrics.h"
#include "hc3detect/ngram_model.h"
#include "hc3detect/random.h"
#include "hc3detect/sentence_splitter.h"
#include "hc3detect/token_scorer.h"
#include "hc3detect/tokenizer.h"
#include "hc3detect/variants.h"
#include "hc3detect/vocab_stats.h"
#include "json.hpp"

namespace hc3detect::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

constexpr std::string_view kManifestFormat = "hc3detect-manifest";
constexpr int kManifestVersion = 1;
constexpr std::string_view kBridgeEnv = "HC3DETECT_BRIDGE";

// Errors detected after parsing that are still usage errors (exit 1).
struct UsageError {
  std::string message;
};

std::string FormatDouble(double v) {
  char buf[64];
  auto result = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, result.ptr);
}

std::string HashHex(std::string_view content) {
  return absl::StrFormat("%016x", Fnv1a64(content));
}

std::string Resolve(const std::string& path) {
  if (path.empty()) return path;
  return fs::absolute(fs::path(path)).lexically_normal().string();
}

absl::StatusOr<std::vector<double>> ParseDoubleList(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    const std::string item = text.substr(start, end - start);
    char* stop = nullptr;
    const double v = std::strtod(item.c_str(), &stop);
    if (item.empty() || stop != item.c_str() + item.size() ||
        !std::isfinite(v)) {
      return absl::InvalidArgumentError(
          absl::StrCat("bad number '", item, "' in list '", text, "'"));
    }
    out.push_back(v);
    start = end + 1;
  }
  return out;
}

std::vector<std::string> SplitCommas(const std::string& text) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = text.find(',', start);
    out.push_back(text.substr(start, end == std::string::npos ? std::string::npos
                                                              : end - start));
    if (end == std::string::npos) return out;
    start = end + 1;
  }
}

// Every flag value of every subcommand. A subcommand only registers the
// flags it uses.
struct Flags {
  // common
  uint64_t seed = 0;
  int jobs = 1;
  std::string language = "english";
  // io
  std::string input;
  std::string output;
  std::string out_dir;
  std::string samples;
  std::string features;
  std::string model;
  std::string bundles;
  std::string corpus;
  std::string manifest;
  std::string text;
  std::string question;
  std::string input_format = "text";
  // ingest
  std::string default_source = "unknown";
  bool drop_empty = false;
  // build
  std::string lexicon;
  std::string case_mode = "auto";
  double test_fraction = 0.1;
  int min_sentence_tokens = 1;
  // lm
  int order = 3;
  double k = 0.1;
  std::string label_filter = "all";
  std::string lm_backend = "ngram";
  std::string lm_model;
  std::string bridge;
  int bridge_pool = 1;
  std::string bridge_model;
  // features
  bool qa = false;
  std::string scale = "fractions";
  bool no_length = false;
  // classifier
  double lambda = 0.0;
  std::string lambdas = "0,0.0001,0.001,0.01,0.1,1";
  int folds = 5;
  int max_iters = 10000;
  double tol = 1e-8;
  double threshold = 0.5;
  std::string model_output;
  // eval
  std::string versions;
  std::string model_tag = "gltr-logreg";
  std::string sources;
  // stats
  std::string role = "both";
  bool sample_one = false;
  bool fold_case = false;
};

class Cli {
 public:
  Cli();
  int Run(const std::vector<std::string>& args);

 private:
  using Handler = std::function<absl::Status()>;

  template <typename T>
  CLI::Option* Opt(CLI::App* app, const std::string& name, T& var,
                   const std::string& help) {
    CLI::Option* o = app->add_option(name, var, help);
    if constexpr (std::is_same_v<T, double>) {
      o->default_str(FormatDouble(var));
    } else if constexpr (std::is_integral_v<T>) {
      o->default_str(std::to_string(var));
    } else {
      o->default_str(var);
    }
    return o;
  }
  CLI::Option* PathOpt(CLI::App* app, const std::string& name,
                       std::string& var, const std::string& help) {
    CLI::Option* o = Opt(app, name, var, help);
    bound_[o] = &var;
    resolve_.insert(o);
    return o;
  }
  CLI::App* Command(CLI::App* parent, const std::string& name,
                    const std::string& help, Handler handler) {
    CLI::App* sub = parent->add_subcommand(name, help);
    handlers_[sub] = std::move(handler);
    return sub;
  }

  void AddSeed(CLI::App* app) {
    Opt(app, "--seed", f_.seed, "Global seed; every stage seed derives from it");
  }
  void AddJobs(CLI::App* app) {
    Opt(app, "--jobs", f_.jobs, "Worker threads")->check(CLI::Range(1, 1024));
  }
  void AddBackend(CLI::App* app) {
    Opt(app, "--lm-backend", f_.lm_backend, "Token scorer")
        ->check(CLI::IsMember({"ngram", "bridge"}));
    PathOpt(app, "--lm-model", f_.lm_model, "n-gram model file");
    bound_[Opt(app, "--bridge", f_.bridge,
               "Bridge address (host:port or exec:<cmd>); HC3DETECT_BRIDGE "
               "overrides it")] = &f_.bridge;
    Opt(app, "--bridge-pool", f_.bridge_pool, "Bridge connections")
        ->check(CLI::Range(1, 256));
    Opt(app, "--bridge-model", f_.bridge_model, "Model hint sent to the bridge");
  }
  void AddFeatureFlags(CLI::App* app) {
    app->add_flag("--qa", f_.qa, "Condition answers on their question");
    Opt(app, "--scale", f_.scale, "Rank bucket representation")
        ->check(CLI::IsMember({"fractions", "counts"}));
    app->add_flag("--no-length", f_.no_length, "Drop the ln(length) feature");
  }
  void AddClassifierFlags(CLI::App* app, bool grid) {
    if (grid) {
      Opt(app, "--lambdas", f_.lambdas, "Comma-separated L2 grid");
      Opt(app, "--folds", f_.folds, "Cross-validation folds")
          ->check(CLI::Range(2, 1000));
    }
    Opt(app, "--max-iters", f_.max_iters, "Gradient descent iteration cap")
        ->check(CLI::Range(1, 100000000));
    Opt(app, "--tol", f_.tol, "Gradient infinity-norm tolerance");
    Opt(app, "--threshold", f_.threshold, "Decision threshold");
  }

  // Handlers.
  absl::Status Ingest();
  absl::Status Build();
  absl::Status LmTrain();
  absl::Status LmScore();
  absl::Status Featurize();
  absl::Status Train();
  absl::Status Grid();
  absl::Status PredictCmd();
  absl::Status Detect();
  absl::Status EvalMatrix();
  absl::Status EvalSources();
  absl::Status StatsVocab();
  absl::Status StatsPpl();
  absl::Status Replay();

  // Helpers shared by the handlers.
  struct Backend {
    std::optional<NGramModel> ngram;
    std::unique_ptr<ModelScorer> model_scorer;
    std::unique_ptr<BridgeScorer> bridge;
    const TokenScorer* scorer = nullptr;
    std::optional<Language> language;  // known for n-gram models
  };
  absl::StatusOr<std::unique_ptr<Backend>> OpenBackend();
  absl::StatusOr<FeatureConfig> FeatureConfigFromFlags() const;
  absl::StatusOr<PipelineConfig> PipelineFromFlags() const;
  Json Effective() const;
  absl::Status WriteManifest(const fs::path& manifest_path, Json outputs,
                             Json details) const;
  Json HashFiles(const std::vector<fs::path>& files) const;
  Json HashDir(const fs::path& dir) const;

  CLI::App app_{"Detects machine-written answers with language-model rank "
                "features"};
  Flags f_;
  std::map<CLI::App*, Handler> handlers_;
  // Options recorded in manifests by their bound value after resolution.
  std::map<const CLI::Option*, std::string*> bound_;
  std::set<const CLI::Option*> resolve_;
  CLI::App* leaf_ = nullptr;
  std::string command_;
};

Cli::Cli() {
  app_.require_subcommand(1);
  app_.set_help_all_flag("--help-all", "Show help for every subcommand");

  CLI::App* ingest =
      Command(&app_, "ingest", "Convert a comparison corpus into samples",
              [this] { return Ingest(); });
  PathOpt(ingest, "--input", f_.input, "Comparison corpus (JSONL or array)")
      ->required();
  PathOpt(ingest, "--output", f_.output, "Sample export (JSONL)")->required();
  Opt(ingest, "--language", f_.language, "Corpus language")
      ->check(CLI::IsMember({"english", "en", "chinese", "zh"}));
  Opt(ingest, "--default-source", f_.default_source,
      "Source for records without one");
  ingest->add_flag("--drop-empty", f_.drop_empty,
                   "Drop empty answers instead of failing");

  CLI::App* build = Command(&app_, "build", "Build the six corpus versions",
                            [this] { return Build(); });
  PathOpt(build, "--samples", f_.samples, "Sample export")->required();
  PathOpt(build, "--out-dir", f_.out_dir, "Bundle directory")->required();
  PathOpt(build, "--lexicon", f_.lexicon,
          "Indicating-phrase lexicon (built-in when empty)");
  Opt(build, "--case", f_.case_mode, "Lexicon matching")
      ->check(CLI::IsMember({"auto", "sensitive", "insensitive"}));
  AddSeed(build);
  Opt(build, "--test-fraction", f_.test_fraction, "Held-out record fraction");
  Opt(build, "--min-sentence-tokens", f_.min_sentence_tokens,
      "Shortest kept sentence")
      ->check(CLI::Range(1, 1000000));

  CLI::App* lm = app_.add_subcommand("lm", "Language-model utilities");
  lm->require_subcommand(1);
  CLI::App* lm_train = Command(lm, "train", "Train an add-k n-gram model",
                               [this] { return LmTrain(); });
  PathOpt(lm_train, "--input", f_.input, "Training texts")->required();
  Opt(lm_train, "--input-format", f_.input_format,
      "samples (export JSONL) or text (one document per line)")
      ->check(CLI::IsMember({"samples", "text"}));
  PathOpt(lm_train, "--output", f_.output, "Model file")->required();
  Opt(lm_train, "--language", f_.language, "Language of text input")
      ->check(CLI::IsMember({"english", "en", "chinese", "zh"}));
  Opt(lm_train, "--order", f_.order, "n-gram order")->check(CLI::Range(1, 16));
  Opt(lm_train, "--k", f_.k, "Add-k smoothing constant");
  Opt(lm_train, "--labels", f_.label_filter, "Which sample labels to train on")
      ->check(CLI::IsMember({"all", "human", "chatgpt"}));

  CLI::App* lm_score = Command(lm, "score", "Print per-token ranks",
                               [this] { return LmScore(); });
  AddBackend(lm_score);
  Opt(lm_score, "--text", f_.text, "Text to score");
  PathOpt(lm_score, "--input", f_.input, "File with one text per line");
  Opt(lm_score, "--question", f_.question, "Left context for the text");
  PathOpt(lm_score, "--output", f_.output, "TSV output (stdout when empty)");

  CLI::App* featurize =
      Command(&app_, "featurize", "Extract rank-bucket features",
              [this] { return Featurize(); });
  PathOpt(featurize, "--samples", f_.samples, "Sample export")->required();
  PathOpt(featurize, "--output", f_.output, "Feature dump (JSONL)")->required();
  AddBackend(featurize);
  featurize->add_flag("--qa", f_.qa, "Condition answers on their question");
  AddJobs(featurize);

  CLI::App* train = Command(&app_, "train", "Fit logistic regression",
                            [this] { return Train(); });
  PathOpt(train, "--features", f_.features, "Feature dump")->required();
  PathOpt(train, "--output", f_.output, "Model file")->required();
  Opt(train, "--lambda", f_.lambda, "L2 strength");
  AddFeatureFlags(train);
  AddClassifierFlags(train, false);
  AddSeed(train);

  CLI::App* grid = Command(&app_, "grid", "Cross-validated lambda search",
                           [this] { return Grid(); });
  PathOpt(grid, "--features", f_.features, "Feature dump")->required();
  PathOpt(grid, "--output", f_.output, "Grid report (JSON)")->required();
  PathOpt(grid, "--model-output", f_.model_output,
          "Also write the model refit with the chosen lambda");
  AddFeatureFlags(grid);
  AddClassifierFlags(grid, true);
  AddSeed(grid);

  CLI::App* predict = Command(&app_, "predict", "Classify stored features",
                              [this] { return PredictCmd(); });
  PathOpt(predict, "--model", f_.model, "Model file")->required();
  PathOpt(predict, "--features", f_.features, "Feature dump")->required();
  PathOpt(predict, "--output", f_.output, "Predictions (JSONL)")->required();

  CLI::App* detect = Command(&app_, "detect", "Classify raw text",
                             [this] { return Detect(); });
  PathOpt(detect, "--model", f_.model, "Model file")->required();
  Opt(detect, "--text", f_.text, "Text to classify");
  PathOpt(detect, "--input", f_.input, "Input file");
  Opt(detect, "--input-format", f_.input_format,
      "text (one per line) or samples (export JSONL)")
      ->check(CLI::IsMember({"samples", "text"}));
  Opt(detect, "--question", f_.question, "Question for --text in QA mode");
  PathOpt(detect, "--output", f_.output, "Also write results as JSONL");
  AddBackend(detect);
  AddFeatureFlags(detect);

  CLI::App* eval = app_.add_subcommand("eval", "Evaluation reports");
  eval->require_subcommand(1);
  CLI::App* matrix = Command(eval, "matrix", "Train x test version matrix",
                             [this] { return EvalMatrix(); });
  PathOpt(matrix, "--bundles", f_.bundles, "Bundle directory")->required();
  PathOpt(matrix, "--out-dir", f_.out_dir, "Report directory")->required();
  Opt(matrix, "--versions", f_.versions,
      "Comma-separated versions (all six when empty)");
  Opt(matrix, "--model-tag", f_.model_tag, "Model family label");
  AddBackend(matrix);
  AddFeatureFlags(matrix);
  AddClassifierFlags(matrix, true);
  AddSeed(matrix);
  AddJobs(matrix);

  CLI::App* sources = Command(eval, "sources", "Per-source F1 breakdown",
                              [this] { return EvalSources(); });
  PathOpt(sources, "--model", f_.model, "Model file")->required();
  PathOpt(sources, "--features", f_.features, "Test feature dump")->required();
  PathOpt(sources, "--out-dir", f_.out_dir, "Report directory")->required();
  Opt(sources, "--sources", f_.sources,
      "Comma-separated sources expected in the test set");

  CLI::App* stats = app_.add_subcommand("stats", "Corpus statistics");
  stats->require_subcommand(1);
  CLI::App* vocab = Command(stats, "vocab", "Length, vocabulary and density",
                            [this] { return StatsVocab(); });
  PathOpt(vocab, "--corpus", f_.corpus, "Comparison corpus")->required();
  PathOpt(vocab, "--out-dir", f_.out_dir, "Report directory")->required();
  Opt(vocab, "--language", f_.language, "Corpus language")
      ->check(CLI::IsMember({"english", "en", "chinese", "zh"}));
  Opt(vocab, "--role", f_.role, "Which answers")
      ->check(CLI::IsMember({"both", "human", "chatgpt"}));
  vocab->add_flag("--sample-one", f_.sample_one,
                  "Draw one answer per record and role");
  vocab->add_flag("--fold-case", f_.fold_case, "Count ASCII case-folded");
  AddSeed(vocab);

  CLI::App* ppl = Command(stats, "ppl", "Per-text and per-sentence perplexity",
                          [this] { return StatsPpl(); });
  PathOpt(ppl, "--samples", f_.samples, "Sample export")->required();
  PathOpt(ppl, "--out-dir", f_.out_dir, "Report directory")->required();
  AddBackend(ppl);

  CLI::App* replay = Command(&app_, "replay", "Re-run a manifest",
                             [this] { return Replay(); });
  PathOpt(replay, "--manifest", f_.manifest, "Manifest to replay")->required();
}

Json Cli::Effective() const {
  Json v = Json::object();
  for (const CLI::Option* o : leaf_->get_options()) {
    if (o == leaf_->get_help_ptr() || o == leaf_->get_help_all_ptr() ||
        o->get_lnames().empty()) {
      continue;
    }
    const std::string key = o->get_lnames().front();
    if (o->get_expected_min() == 0) {
      v[key] = o->count() > 0;
    } else if (auto it = bound_.find(o); it != bound_.end()) {
      v[key] = *it->second;
    } else {
      v[key] = o->count() > 0 ? o->as<std::string>() : o->get_default_str();
    }
  }
  return v;
}

Json Cli::HashFiles(const std::vector<fs::path>& files) const {
  Json v = Json::object();
  for (const fs::path& p : files) {
    auto content = ReadFile(p);
    v[p.string()] = content.ok() ? HashHex(*content) : "missing";
  }
  return v;
}

Json Cli::HashDir(const fs::path& dir) const {
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    if (entry.path().filename() == "manifest.json") continue;
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  Json v = Json::object();
  for (const fs::path& p : files) {
    auto content = ReadFile(p);
    v[fs::relative(p, dir).generic_string()] =
        content.ok() ? HashHex(*content) : "missing";
  }
  return v;
}

absl::Status Cli::WriteManifest(const fs::path& manifest_path, Json outputs,
                                Json details) const {
  Json m;
  m["format"] = kManifestFormat;
  m["version"] = kManifestVersion;
  m["command"] = command_;
  m["config"] = Effective();
  m["outputs"] = std::move(outputs);
  m["details"] = std::move(details);
  return WriteFile(manifest_path, m.dump(2) + "\n");
}

absl::StatusOr<FeatureConfig> Cli::FeatureConfigFromFlags() const {
  FeatureConfig c;
  c.scale = f_.scale == "counts" ? FeatureScale::kCounts
                                 : FeatureScale::kFractions;
  c.length_feature = !f_.no_length;
  c.qa_mode = f_.qa;
  return c;
}

absl::StatusOr<PipelineConfig> Cli::PipelineFromFlags() const {
  PipelineConfig p;
  auto features = FeatureConfigFromFlags();
  if (!features.ok()) return features.status();
  p.features = *features;
  auto lambdas = ParseDoubleList(f_.lambdas);
  if (!lambdas.ok()) throw UsageError{std::string(lambdas.status().message())};
  for (double l : *lambdas) {
    if (l < 0.0) throw UsageError{"lambdas must be >= 0"};
  }
  p.grid.lambdas = *lambdas;
  p.grid.folds = f_.folds;
  p.grid.base.max_iters = f_.max_iters;
  p.grid.base.tol = f_.tol;
  p.grid.base.threshold = f_.threshold;
  p.seed = f_.seed;
  p.jobs = f_.jobs;
  p.model_tag = f_.model_tag;
  return p;
}

absl::StatusOr<std::unique_ptr<Cli::Backend>> Cli::OpenBackend() {
  auto backend = std::make_unique<Backend>();
  if (f_.lm_backend == "ngram") {
    if (!f_.bridge.empty()) {
      throw UsageError{"--bridge is only valid with --lm-backend bridge"};
    }
    if (f_.lm_model.empty()) {
      throw UsageError{"--lm-backend ngram requires --lm-model"};
    }
    auto model = NGramModel::Load(f_.lm_model);
    if (!model.ok()) return model.status();
    backend->ngram = *std::move(model);
    backend->language = backend->ngram->language();
    backend->model_scorer = std::make_unique<ModelScorer>(
        *backend->ngram, backend->ngram->language(), "ngram");
    backend->scorer = backend->model_scorer.get();
    return backend;
  }
  if (const char* env = std::getenv(std::string(kBridgeEnv).c_str());
      env != nullptr && *env != '\0') {
    f_.bridge = env;
  }
  if (f_.bridge.empty()) {
    throw UsageError{absl::StrCat("--lm-backend bridge requires --bridge or ",
                                  std::string(kBridgeEnv))};
  }
  if (!f_.lm_model.empty()) {
    throw UsageError{"--lm-model is only valid with --lm-backend ngram"};
  }
  std::optional<std::string> hint;
  if (!f_.bridge_model.empty()) hint = f_.bridge_model;
  auto bridge = BridgeScorer::Connect(f_.bridge, f_.bridge_pool, hint);
  if (!bridge.ok()) return bridge.status();
  backend->bridge = *std::move(bridge);
  backend->scorer = backend->bridge.get();
  return backend;
}

// ---------------------------------------------------------------- ingest

absl::Status Cli::Ingest() {
  auto language = ParseLanguage(f_.language);
  if (!language.ok()) return language.status();
  int dropped = 0;
  IngestOptions options;
  options.language = *language;
  options.default_source = f_.default_source;
  options.drop_empty_answers = f_.drop_empty;
  options.dropped_answers = &dropped;
  auto records = IngestCorpus(f_.input, options);
  if (!records.ok()) return records.status();
  const std::vector<LabeledSample> samples = ExplodeSamples(*records);
  if (auto s = WriteSamples(f_.output, samples); !s.ok()) return s;

  std::map<std::string, std::pair<int64_t, int64_t>> per_source;
  int64_t human = 0;
  int64_t chatgpt = 0;
  for (const LabeledSample& s : samples) {
    auto& counts = per_source[s.source.name()];
    (s.label == 0 ? counts.first : counts.second)++;
    (s.label == 0 ? human : chatgpt)++;
  }
  std::cout << "records=" << records->size() << " samples=" << samples.size()
            << "\n";
  std::cout << "human=" << human << " chatgpt=" << chatgpt << "\n";
  Json details;
  details["records"] = records->size();
  details["samples"] = samples.size();
  details["dropped_answers"] = dropped;
  Json sources = Json::object();
  for (const auto& [name, counts] : per_source) {
    std::cout << "source " << name << ": human=" << counts.first
              << " chatgpt=" << counts.second << "\n";
    sources[name] = {{"human", counts.first}, {"chatgpt", counts.second}};
  }
  details["sources"] = sources;
  if (dropped > 0) std::cout << "dropped_empty_answers=" << dropped << "\n";
  return WriteManifest(f_.output + ".manifest.json",
                       HashFiles({fs::path(f_.output)}), details);
}

// ----------------------------------------------------------------- build

absl::Status Cli::Build() {
  auto samples = ReadSamples(f_.samples);
  if (!samples.ok()) return samples.status();
  const Language language =
      samples->empty() ? Language::kEnglish : samples->front().language;
  CaseMode case_mode = DefaultCaseMode(language);
  if (f_.case_mode == "sensitive") case_mode = CaseMode::kSensitive;
  if (f_.case_mode == "insensitive") case_mode = CaseMode::kInsensitive;
  std::optional<IndicatingLexicon> lexicon;
  if (f_.lexicon.empty()) {
    lexicon = IndicatingLexicon::Default(case_mode);
  } else {
    auto config = ReadFile(f_.lexicon);
    if (!config.ok()) return config.status();
    auto parsed = IndicatingLexicon::Parse(*config, case_mode);
    if (!parsed.ok()) return parsed.status();
    lexicon = *std::move(parsed);
  }
  BuildOptions options;
  options.seed = StageSeed(f_.seed, "partition");
  options.test_fraction = f_.test_fraction;
  options.min_sentence_tokens = f_.min_sentence_tokens;
  auto bundles = BuildVersions(*samples, *lexicon, options);
  if (!bundles.ok()) return bundles.status();
  if (auto s = WriteBundles(f_.out_dir, *bundles); !s.ok()) return s;

  Json details;
  details["seed"] = f_.seed;
  details["partition_seed"] = options.seed;
  details["test_fraction"] = f_.test_fraction;
  details["lexicon_hash"] = HashHex(lexicon->Serialize());
  details["language"] = LanguageName(language);
  Json versions = Json::object();
  for (const auto& [spec, bundle] : *bundles) {
    versions[spec.Name()] = {{"train", bundle.train.size()},
                             {"test", bundle.test.size()}};
  }
  // Keep the canonical version order in the manifest.
  Json ordered = Json::object();
  for (const VersionSpec& v : AllVersions()) {
    if (versions.contains(v.Name())) ordered[v.Name()] = versions[v.Name()];
    const auto& b = bundles->at(v);
    std::cout << absl::StrFormat("%-14s train=%d test=%d\n", v.Name(),
                                 b.train.size(), b.test.size());
  }
  details["versions"] = ordered;
  return WriteManifest(fs::path(f_.out_dir) / "manifest.json",
                       HashDir(f_.out_dir), details);
}

// -------------------------------------------------------------------- lm

absl::Status Cli::LmTrain() {
  std::vector<std::string> texts;
  Language language = Language::kEnglish;
  if (f_.input_format == "samples") {
    auto samples = ReadSamples(f_.input);
    if (!samples.ok()) return samples.status();
    if (samples->empty()) {
      return absl::InvalidArgumentError("no samples to train on");
    }
    language = samples->front().language;
    for (const LabeledSample& s : *samples) {
      if (s.language != language) {
        return absl::InvalidArgumentError(
            "samples mix languages; train one model per language");
      }
      if (f_.label_filter == "human" && s.label != 0) continue;
      if (f_.label_filter == "chatgpt" && s.label != 1) continue;
      texts.push_back(s.text);
    }
  } else {
    auto parsed = ParseLanguage(f_.language);
    if (!parsed.ok()) return parsed.status();
    language = *parsed;
    auto content = ReadFile(f_.input);
    if (!content.ok()) return content.status();
    std::size_t start = 0;
    while (start < content->size()) {
      std::size_t end = content->find('\n', start);
      if (end == std::string::npos) end = content->size();
      std::string line = content->substr(start, end - start);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) texts.push_back(std::move(line));
      start = end + 1;
    }
  }
  auto model = TrainNGram(texts, f_.order, f_.k, language);
  if (!model.ok()) return model.status();
  if (auto s = model->Save(f_.output); !s.ok()) return s;
  std::cout << "texts=" << texts.size()
            << " vocab=" << model->vocabulary().size()
            << " order=" << model->order() << "\n";
  Json details;
  details["texts"] = texts.size();
  details["vocab_size"] = model->vocabulary().size();
  return WriteManifest(f_.output + ".manifest.json",
                       HashFiles({fs::path(f_.output)}), details);
}

absl::Status Cli::LmScore() {
  if (f_.text.empty() == f_.input.empty()) {
    throw UsageError{"give exactly one of --text and --input"};
  }
  auto backend = OpenBackend();
  if (!backend.ok()) return backend.status();
  std::vector<std::string> texts;
  if (!f_.text.empty()) {
    texts.push_back(f_.text);
  } else {
    auto content = ReadFile(f_.input);
    if (!content.ok()) return content.status();
    std::size_t start = 0;
    while (start < content->size()) {
      std::size_t end = content->find('\n', start);
      if (end == std::string::npos) end = content->size();
      std::string line = content->substr(start, end - start);
      if (!line.empty()) texts.push_back(std::move(line));
      start = end + 1;
    }
  }
  std::optional<std::string_view> context;
  if (!f_.question.empty()) context = f_.question;
  std::string out = "text\tposition\ttoken\ttoken_id\trank\tlogprob\n";
  for (std::size_t t = 0; t < texts.size(); ++t) {
    auto ranked = (*backend)->scorer->Score(texts[t], context);
    if (!ranked.ok()) return ranked.status();
    for (std::size_t i = 0; i < ranked->size(); ++i) {
      const RankedToken& r = (*ranked)[i];
      absl::StrAppendFormat(&out, "%d\t%d\t%s\t%d\t%d\t%.17g\n", t + 1, i + 1,
                            r.surface, r.token_id, r.rank, r.logprob);
    }
  }
  if (f_.output.empty()) {
    std::cout << out;
    return absl::OkStatus();
  }
  if (auto s = WriteFile(f_.output, out); !s.ok()) return s;
  Json details;
  details["backend"] = (*backend)->scorer->Describe();
  return WriteManifest(f_.output + ".manifest.json",
                       HashFiles({fs::path(f_.output)}), details);
}

// ------------------------------------------------------------- featurize

absl::Status Cli::Featurize() {
  auto backend = OpenBackend();
  if (!backend.ok()) return backend.status();
  auto samples = ReadSamples(f_.samples);
  if (!samples.ok()) return samples.status();
  auto records = FeaturizeSamples(*samples, *(*backend)->scorer, f_.qa, f_.jobs);
  if (!records.ok()) return records.status();
  if (auto s = WriteFeatures(f_.output, *records); !s.ok()) return s;
  std::cout << "featurized " << records->size() << " samples\n";
  Json details;
  details["backend"] = (*backend)->scorer->Describe();
  details["samples"] = records->size();
  return WriteManifest(f_.output + ".manifest.json",
                       HashFiles({fs::path(f_.output)}), details);
}

// ------------------------------------------------------------ classifier

absl::Status CheckQaMode(std::span<const FeatureRecord> records, bool qa) {
  for (const FeatureRecord& r : records) {
    if (r.qa_mode != qa) {
      return absl::InvalidArgumentError(absl::StrCat(
          "config mismatch: ", r.sample_id, " has qa_mode=",
          r.qa_mode ? "true" : "false", " but --qa is ", qa ? "set" : "unset"));
    }
  }
  return absl::OkStatus();
}

absl::Status Cli::Train() {
  auto records = ReadFeatures(f_.features);
  if (!records.ok()) return records.status();
  if (auto s = CheckQaMode(*records, f_.qa); !s.ok()) return s;
  auto config = FeatureConfigFromFlags();
  if (!config.ok()) return config.status();
  TrainOptions options;
  options.lambda = f_.lambda;
  options.seed = f_.seed;
  options.max_iters = f_.max_iters;
  options.tol = f_.tol;
  options.threshold = f_.threshold;
  options.feature_config = *config;
  const auto data = ToLabeledVectors(*records, *config);
  auto fitted = TrainLogReg(data, options);
  if (!fitted.ok()) return fitted.status();
  if (auto s = fitted->first.Save(f_.output); !s.ok()) return s;
  std::cout << absl::StrFormat(
      "loss=%.6f iterations=%d converged=%s\n", fitted->second.final_loss,
      fitted->second.iterations, fitted->second.converged ? "true" : "false");
  Json details;
  details["train_report"] = fitted->second.ToJson();
  return WriteManifest(f_.output + ".manifest.json",
                       HashFiles({fs::path(f_.output)}), details);
}

absl::Status Cli::Grid() {
  auto records = ReadFeatures(f_.features);
  if (!records.ok()) return records.status();
  if (auto s = CheckQaMode(*records, f_.qa); !s.ok()) return s;
  auto pipeline = PipelineFromFlags();
  if (!pipeline.ok()) return pipeline.status();
  auto fit = FitDetector(*records, *pipeline, "grid");
  if (!fit.ok()) return fit.status();
  Json report = fit->grid.ToJson();
  report["train_report"] = fit->report.ToJson();
  if (auto s = WriteFile(f_.output, report.dump(2) + "\n"); !s.ok()) return s;
  std::vector<fs::path> outputs = {fs::path(f_.output)};
  if (!f_.model_output.empty()) {
    if (auto s = fit->model.Save(f_.model_output); !s.ok()) return s;
    outputs.emplace_back(f_.model_output);
  }
  for (const auto& [lambda, f1] : fit->grid.scores) {
    std::cout << absl::StrFormat("lambda=%-8s macro_f1=%.4f\n",
                                 FormatDouble(lambda), f1);
  }
  std::cout << "chosen_lambda=" << FormatDouble(fit->grid.chosen_lambda)
            << "\n";
  return WriteManifest(f_.output + ".manifest.json", HashFiles(outputs),
                       Json::object());
}

absl::Status Cli::PredictCmd() {
  auto model = LogRegModel::Load(f_.model);
  if (!model.ok()) return model.status();
  auto records = ReadFeatures(f_.features);
  if (!records.ok()) return records.status();
  auto predictions = PredictRecords(*model, *records);
  if (!predictions.ok()) return predictions.status();
  std::string out;
  std::vector<int> predicted;
  std::vector<int> labels;
  for (std::size_t i = 0; i < records->size(); ++i) {
    const Prediction& p = (*predictions)[i];
    Json line;
    line["sample_id"] = (*records)[i].sample_id;
    line["probability"] = p.probability;
    line["label"] = p.label;
    line["gold"] = (*records)[i].label;
    out += line.dump() + "\n";
    predicted.push_back(p.label);
    labels.push_back((*records)[i].label);
  }
  if (auto s = WriteFile(f_.output, out); !s.ok()) return s;
  Json details = Json::object();
  if (!records->empty()) {
    auto f1 = ComputeF1(predicted, labels);
    if (!f1.ok()) return f1.status();
    std::cout << absl::StrFormat("F1-hu=%.4f F1-ch=%.4f macro=%.4f\n",
                                 f1->human.f1, f1->chatgpt.f1, f1->macro_f1);
    details["f1"] = f1->ToJson();
  }
  return WriteManifest(f_.output + ".manifest.json",
                       HashFiles({fs::path(f_.output)}), details);
}

absl::Status Cli::Detect() {
  if (f_.text.empty() == f_.input.empty()) {
    throw UsageError{"give exactly one of --text and --input"};
  }
  if (f_.qa && !f_.text.empty() && f_.question.empty()) {
    throw UsageError{"--qa with --text needs --question"};
  }
  auto model = LogRegModel::Load(f_.model);
  if (!model.ok()) return model.status();
  auto config = FeatureConfigFromFlags();
  if (!config.ok()) return config.status();
  if (!(*config == model->feature_config)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "config mismatch: model was trained with ",
        model->feature_config.Descriptor(), " but flags give ",
        config->Descriptor()));
  }
  std::vector<LabeledSample> inputs;
  if (!f_.text.empty()) {
    LabeledSample s;
    s.sample_id = "text:1";
    s.text = f_.text;
    if (!f_.question.empty()) s.question = f_.question;
    inputs.push_back(std::move(s));
  } else if (f_.input_format == "samples") {
    auto samples = ReadSamples(f_.input);
    if (!samples.ok()) return samples.status();
    inputs = *std::move(samples);
  } else {
    auto content = ReadFile(f_.input);
    if (!content.ok()) return content.status();
    std::size_t start = 0;
    int line_no = 0;
    while (start < content->size()) {
      std::size_t end = content->find('\n', start);
      if (end == std::string::npos) end = content->size();
      ++line_no;
      std::string line = content->substr(start, end - start);
      start = end + 1;
      if (line.empty()) continue;
      LabeledSample s;
      s.sample_id = absl::StrCat("line:", line_no);
      s.text = std::move(line);
      if (!f_.question.empty()) s.question = f_.question;
      inputs.push_back(std::move(s));
    }
  }
  if (inputs.empty()) return absl::InvalidArgumentError("no input text");
  if (f_.qa) {
    for (const LabeledSample& s : inputs) {
      if (!s.question.has_value()) {
        throw UsageError{absl::StrCat(
            "--qa needs a question for every input; ", s.sample_id,
            " has none (use --question or a samples file with questions)")};
      }
    }
  }
  auto backend = OpenBackend();
  if (!backend.ok()) return backend.status();
  if ((*backend)->language.has_value()) {
    for (LabeledSample& s : inputs) s.language = *(*backend)->language;
  }
  std::string jsonl;
  for (const LabeledSample& s : inputs) {
    auto features = FeaturizeSample(s, *(*backend)->scorer, f_.qa);
    if (!features.ok()) {
      return absl::Status(features.status().code(),
                          absl::StrCat(s.sample_id, ": ",
                                       std::string(features.status().message())));
    }
    auto p = Predict(*model, ClassifierInput(*features, *config));
    if (!p.ok()) return p.status();
    std::cout << absl::StrFormat("%s\t%.6f\t%d\n", s.sample_id, p->probability,
                                 p->label);
    Json line;
    line["sample_id"] = s.sample_id;
    line["probability"] = p->probability;
    line["label"] = p->label;
    jsonl += line.dump() + "\n";
  }
  if (f_.output.empty()) return absl::OkStatus();
  if (auto s = WriteFile(f_.output, jsonl); !s.ok()) return s;
  Json details;
  details["backend"] = (*backend)->scorer->Describe();
  return WriteManifest(f_.output + ".manifest.json",
                       HashFiles({fs::path(f_.output)}), details);
}

// ------------------------------------------------------------------ eval

absl::Status Cli::EvalMatrix() {
  std::vector<VersionSpec> versions;
  if (f_.versions.empty()) {
    versions.assign(AllVersions().begin(), AllVersions().end());
  } else {
    for (const std::string& name : SplitCommas(f_.versions)) {
      auto v = ParseVersion(name);
      if (!v.ok()) throw UsageError{std::string(v.status().message())};
      versions.push_back(*v);
    }
  }
  auto pipeline = PipelineFromFlags();
  if (!pipeline.ok()) return pipeline.status();
  auto bundles = ReadBundles(f_.bundles);
  if (!bundles.ok()) return bundles.status();
  auto backend = OpenBackend();
  if (!backend.ok()) return backend.status();
  auto report = RunMatrix(*bundles, *(*backend)->scorer, *pipeline, versions);
  if (!report.ok()) return report.status();

  const fs::path dir(f_.out_dir);
  if (auto s = WriteFile(dir / "matrix.json", report->ToJson().dump(2) + "\n");
      !s.ok()) {
    return s;
  }
  if (auto s = WriteFile(dir / "matrix.md", report->ToMarkdown()); !s.ok()) {
    return s;
  }
  if (auto s = WriteFile(dir / "matrix.csv", report->ToCsv()); !s.ok()) {
    return s;
  }
  for (const auto& [version, model] : report->models) {
    if (auto s = model.Save(dir / "models" / (version.Name() + ".json"));
        !s.ok()) {
      return s;
    }
  }
  std::cout << report->ToMarkdown();
  Json details;
  details["backend"] = (*backend)->scorer->Describe();
  details["pipeline"] = pipeline->ToJson();
  return WriteManifest(dir / "manifest.json", HashDir(dir), details);
}

absl::Status Cli::EvalSources() {
  auto model = LogRegModel::Load(f_.model);
  if (!model.ok()) return model.status();
  auto records = ReadFeatures(f_.features);
  if (!records.ok()) return records.status();
  const std::vector<std::string> expected = SplitCommas(f_.sources);
  auto breakdown = BreakdownBySource(*model, *records, expected);
  if (!breakdown.ok()) return breakdown.status();
  const fs::path dir(f_.out_dir);
  if (auto s =
          WriteFile(dir / "sources.json", breakdown->ToJson().dump(2) + "\n");
      !s.ok()) {
    return s;
  }
  if (auto s = WriteFile(dir / "sources.md", breakdown->ToMarkdown()); !s.ok()) {
    return s;
  }
  if (auto s = WriteFile(dir / "sources.csv", breakdown->ToCsv()); !s.ok()) {
    return s;
  }
  std::cout << breakdown->ToMarkdown();
  return WriteManifest(dir / "manifest.json", HashDir(dir), Json::object());
}

// ----------------------------------------------------------------- stats

absl::Status Cli::StatsVocab() {
  auto language = ParseLanguage(f_.language);
  if (!language.ok()) return language.status();
  IngestOptions ingest;
  ingest.language = *language;
  auto records = IngestCorpus(f_.corpus, ingest);
  if (!records.ok()) return records.status();
  std::vector<Role> roles;
  if (f_.role != "chatgpt") roles.push_back(Role::kHuman);
  if (f_.role != "human") roles.push_back(Role::kChatGpt);
  std::vector<VocabStats> rows;
  for (Role role : roles) {
    VocabOptions options;
    options.role = role;
    options.seed = StageSeed(f_.seed, absl::StrCat("vocab/", std::string(RoleName(role))));
    options.sample_one = f_.sample_one;
    options.fold_case = f_.fold_case;
    auto stats = ComputeVocabStats(*records, options);
    if (!stats.ok()) return stats.status();
    rows.insert(rows.end(), stats->begin(), stats->end());
  }
  // Rows grouped by split with the roles side by side; "all" last.
  std::stable_sort(rows.begin(), rows.end(),
                   [](const VocabStats& a, const VocabStats& b) {
                     const bool a_all = a.split == kAllSplits;
                     const bool b_all = b.split == kAllSplits;
                     if (a_all != b_all) return b_all;
                     return a.split < b.split;
                   });
  const fs::path dir(f_.out_dir);
  Json json = Json::array();
  for (const VocabStats& s : rows) json.push_back(s.ToJson());
  if (auto s = WriteFile(dir / "vocab.json", json.dump(2) + "\n"); !s.ok()) {
    return s;
  }
  if (auto s = WriteFile(dir / "vocab.md", VocabTableMarkdown(rows)); !s.ok()) {
    return s;
  }
  if (auto s = WriteFile(dir / "vocab.csv", VocabTableCsv(rows)); !s.ok()) {
    return s;
  }
  std::cout << VocabTableMarkdown(rows);
  return WriteManifest(dir / "manifest.json", HashDir(dir), Json::object());
}

double NearestRankPercentile(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double rank = std::ceil(q * static_cast<double>(values.size()));
  const std::size_t index =
      static_cast<std::size_t>(std::max(1.0, rank)) - 1;
  return values[std::min(index, values.size() - 1)];
}

absl::Status Cli::StatsPpl() {
  auto samples = ReadSamples(f_.samples);
  if (!samples.ok()) return samples.status();
  auto backend = OpenBackend();
  if (!backend.ok()) return backend.status();
  std::string jsonl;
  std::map<int, std::vector<double>> by_label;
  std::map<int, std::vector<double>> sentences_by_label;
  for (const LabeledSample& s : *samples) {
    auto report = TextPerplexity(*(*backend)->scorer, s.text, s.language);
    if (!report.ok()) {
      return absl::Status(report.status().code(),
                          absl::StrCat(s.sample_id, ": ",
                                       std::string(report.status().message())));
    }
    Json line;
    line["sample_id"] = s.sample_id;
    line["label"] = s.label;
    line["source"] = s.source.name();
    line["text_ppl"] = report->text_ppl;
    line["sentence_ppls"] = report->sentence_ppls;
    line["token_count"] = report->token_count;
    jsonl += line.dump() + "\n";
    by_label[s.label].push_back(report->text_ppl);
    auto& sent = sentences_by_label[s.label];
    sent.insert(sent.end(), report->sentence_ppls.begin(),
                report->sentence_ppls.end());
  }
  // Histogram over log10(PPL) in bins of width 0.1.
  std::string histogram = "label,level,bin_lower,bin_upper,count\n";
  Json summary = Json::object();
  for (const auto& [level, table] :
       {std::pair<std::string, const std::map<int, std::vector<double>>*>{
            "text", &by_label},
        {"sentence", &sentences_by_label}}) {
    Json per_level = Json::object();
    for (const auto& [label, values] : *table) {
      const std::string name = label == 0 ? "human" : "chatgpt";
      double sum = 0.0;
      std::map<int, int64_t> bins;
      for (double v : values) {
        sum += v;
        bins[static_cast<int>(std::floor(std::log10(v) * 10.0))]++;
      }
      for (const auto& [bin, count] : bins) {
        absl::StrAppendFormat(&histogram, "%s,%s,%.6g,%.6g,%d\n", name, level,
                              std::pow(10.0, bin / 10.0),
                              std::pow(10.0, (bin + 1) / 10.0), count);
      }
      Json entry;
      entry["count"] = values.size();
      entry["mean"] = values.empty() ? 0.0 : sum / values.size();
      entry["p50"] = NearestRankPercentile(values, 0.5);
      entry["p90"] = NearestRankPercentile(values, 0.9);
      per_level[name] = entry;
    }
    summary[level] = per_level;
  }
  const fs::path dir(f_.out_dir);
  if (auto s = WriteFile(dir / "ppl.jsonl", jsonl); !s.ok()) return s;
  if (auto s = WriteFile(dir / "ppl_summary.json", summary.dump(2) + "\n");
      !s.ok()) {
    return s;
  }
  if (auto s = WriteFile(dir / "ppl_histogram.csv", histogram); !s.ok()) {
    return s;
  }
  for (const auto& [level, per_level] : summary.items()) {
    for (const auto& [name, entry] : per_level.items()) {
      std::cout << absl::StrFormat(
          "%s %s: n=%d mean=%.3f p50=%.3f p90=%.3f\n", level, name,
          entry["count"].get<int64_t>(), entry["mean"].get<double>(),
          entry["p50"].get<double>(), entry["p90"].get<double>());
    }
  }
  Json details;
  details["backend"] = (*backend)->scorer->Describe();
  return WriteManifest(dir / "manifest.json", HashDir(dir), details);
}

// ---------------------------------------------------------------- replay

fs::path ManifestPathFor(const std::string& command, const Json& config) {
  auto get = [&](const char* key) -> std::string {
    return config.contains(key) ? config[key].get<std::string>() : "";
  };
  const std::string out_dir = get("out-dir");
  if (!out_dir.empty()) return fs::path(out_dir) / "manifest.json";
  (void)command;
  return fs::path(get("output") + ".manifest.json");
}

absl::Status Cli::Replay() {
  auto content = ReadFile(f_.manifest);
  if (!content.ok()) return content.status();
  const nlohmann::json m =
      nlohmann::json::parse(*content, nullptr, /*allow_exceptions=*/false);
  if (m.is_discarded() || !m.is_object() ||
      m.value("format", "") != kManifestFormat ||
      m.value("version", 0) != kManifestVersion || !m.contains("config") ||
      !m["config"].is_object() || !m.contains("command")) {
    return absl::InvalidArgumentError(
        absl::StrCat("not a manifest: ", f_.manifest));
  }
  const std::string command = m["command"].get<std::string>();
  if (command == "replay") {
    return absl::InvalidArgumentError("cannot replay a replay");
  }
  std::vector<std::string> args;
  for (std::size_t start = 0; start <= command.size();) {
    std::size_t end = command.find(' ', start);
    if (end == std::string::npos) end = command.size();
    args.push_back(command.substr(start, end - start));
    start = end + 1;
  }
  for (const auto& [key, value] : m["config"].items()) {
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back("--" + key);
    } else if (value.is_string()) {
      if (value.get<std::string>().empty()) continue;
      args.push_back("--" + key);
      args.push_back(value.get<std::string>());
    } else {
      return absl::InvalidArgumentError(
          absl::StrCat("manifest config entry ", key, " is not a flag value"));
    }
  }
  Cli inner;
  const int code = inner.Run(args);
  if (code != kExitOk) {
    return absl::InternalError(
        absl::StrCat("replayed command exited with code ", code));
  }
  const fs::path fresh = ManifestPathFor(command, m["config"]);
  auto rerun = ReadFile(fresh);
  if (!rerun.ok()) return rerun.status();
  const nlohmann::json after =
      nlohmann::json::parse(*rerun, nullptr, /*allow_exceptions=*/false);
  if (after.is_discarded() || after.value("outputs", nlohmann::json()) !=
                                  m.value("outputs", nlohmann::json())) {
    return absl::DataLossError("replay produced different outputs");
  }
  std::cout << "replay: outputs identical\n";
  return absl::OkStatus();
}

int Cli::Run(const std::vector<std::string>& args) {
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app_.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app_.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  CLI::App* node = &app_;
  std::vector<std::string> names;
  while (true) {
    auto subs = node->get_subcommands();
    if (subs.empty()) break;
    node = subs.front();
    names.push_back(node->get_name());
  }
  leaf_ = node;
  command_ = names.empty() ? "" : names.front();
  for (std::size_t i = 1; i < names.size(); ++i) command_ += " " + names[i];
  for (const CLI::Option* option : leaf_->get_options()) {
    if (resolve_.contains(option)) *bound_.at(option) = Resolve(*bound_.at(option));
  }
  auto handler = handlers_.find(leaf_);
  if (handler == handlers_.end()) {
    std::cerr << app_.help();
    return kExitUsage;
  }
  try {
    const absl::Status status = handler->second();
    if (!status.ok()) {
      std::cerr << "hc3detect " << command_ << ": " << status.message() << "\n";
      return ExitCodeFor(status);
    }
  } catch (const UsageError& e) {
    std::cerr << "hc3detect " << command_ << ": " << e.message << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace

int ExitCodeFor(const absl::Status& status) {
  if (status.ok()) return kExitOk;
  if (status.code() == absl::StatusCode::kUnavailable) return kExitBackend;
  return kExitData;
}

int Run(const std::vector<std::string>& args) {
  Cli cli;
  return cli.Run(args);
}

}  // namespace hc3detect::cli
