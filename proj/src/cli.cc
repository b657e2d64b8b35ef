// Copyright 2026 The authorprof Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "authorprof/cli.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "authorprof/errors.h"
#include "authorprof/model_io.h"
#include "authorprof/vectorizer.h"

namespace authorprof {
namespace {

namespace fs = std::filesystem;

bool has_xml_files(const fs::path &dir) {
  for (const auto &entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".xml") return true;
  }
  return false;
}

std::optional<fs::path> truth_for(const fs::path &dir, const std::optional<fs::path> &given,
                                  bool require_labels) {
  if (given) return given;
  const fs::path implicit = dir / std::string(kTruthFileName);
  if (require_labels && fs::exists(implicit)) return implicit;
  if (require_labels) {
    throw Error(ErrorCode::kUsage, "corpus " + dir.string() +
                                       " is unlabeled: pass --truth or add truth.txt");
  }
  return std::nullopt;
}

void emit(const RunConfig &config, const std::string &text) {
  if (config.output_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(config.output_path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + config.output_path.string());
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + config.output_path.string());
}

CvOptions cv_options(const RunConfig &config) {
  CvOptions options;
  options.k = config.folds;
  options.seed = config.seed;
  return options;
}

void warn_if_unconverged(const MulticlassSvmModel &model, Language language, Task task) {
  if (all_converged(model)) return;
  std::cerr << "authorprof: warning: " << language_code(language) << ' ' << task_name(task)
            << " SMO stopped at the iteration budget before reaching tolerance\n";
}

void check_gender_classes(const MulticlassSvmModel &model) {
  for (const auto &cls : model.classes) {
    try {
      parse_gender(cls);
    } catch (const Error &) {
      throw Error(ErrorCode::kModelIncompatible, "gender model has class '" + cls + "'");
    }
  }
}

Gamma parse_gamma(const std::string &text) {
  if (text == "auto") return Gamma::automatic();
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::kUsage, "--gamma must be 'auto' or a positive real, got '" + text + "'");
  }
  return Gamma::fixed(value);
}

}  // namespace

std::vector<Corpus> load_corpora(const RunConfig &config, bool require_labels) {
  const fs::path &dir = config.corpus_dir;
  if (dir.empty()) throw Error(ErrorCode::kUsage, "--corpus is required");
  if (!fs::is_directory(dir)) throw Error(ErrorCode::kIo, dir.string() + " is not a directory");
  std::vector<Corpus> corpora;
  if (has_xml_files(dir)) {
    corpora.push_back(load_corpus(dir, truth_for(dir, config.truth_path, require_labels)));
    return corpora;
  }
  if (config.truth_path) {
    throw Error(ErrorCode::kUsage,
                "--truth applies to a single corpus; per-language directories use their own truth.txt");
  }
  std::vector<fs::path> subdirs;
  for (const auto &entry : fs::directory_iterator(dir)) {
    if (entry.is_directory() && has_xml_files(entry.path())) subdirs.push_back(entry.path());
  }
  std::sort(subdirs.begin(), subdirs.end());
  for (const auto &sub : subdirs) {
    const fs::path implicit = sub / std::string(kTruthFileName);
    std::optional<fs::path> truth;
    if (fs::exists(implicit)) truth = implicit;
    else if (require_labels) truth = truth_for(sub, std::nullopt, true);
    corpora.push_back(load_corpus(sub, truth));
  }
  if (corpora.empty()) {
    throw Error(ErrorCode::kConsistency, dir.string() + " contains no author XML files");
  }
  for (std::size_t i = 0; i < corpora.size(); ++i) {
    for (std::size_t j = i + 1; j < corpora.size(); ++j) {
      if (corpora[i].language() == corpora[j].language()) {
        throw Error(ErrorCode::kConsistency,
                    "two corpora share language '" +
                        std::string(language_code(corpora[i].language())) + "'");
      }
    }
  }
  return corpora;
}

void cmd_train(const RunConfig &config) {
  if (config.model_path.empty()) throw Error(ErrorCode::kUsage, "--model is required");
  ModelBundle bundle;
  bundle.config = {config.min_df, config.c, config.gamma, config.folds, config.seed};
  for (const Corpus &corpus : load_corpora(config, true)) {
    if (!corpus.fully_labeled()) {
      throw Error(ErrorCode::kUsage, std::string(language_code(corpus.language())) +
                                         " corpus has authors without truth labels");
    }
    DocTermMatrix dtm = fit_transform(corpus, config.min_df);
    LanguageModel lm;
    lm.language = corpus.language();
    lm.gender = train_one_vs_one(dtm.rows, corpus.task_labels(Task::kGender), config.kernel());
    lm.variety = train_one_vs_one(dtm.rows, corpus.task_labels(Task::kVariety), config.kernel());
    warn_if_unconverged(lm.gender, lm.language, Task::kGender);
    warn_if_unconverged(lm.variety, lm.language, Task::kVariety);
    lm.vocab = std::move(dtm.vocab);
    bundle.languages.push_back(std::move(lm));
  }
  save_model(config.model_path, bundle);
}

void cmd_predict(const RunConfig &config) {
  if (config.model_path.empty()) throw Error(ErrorCode::kUsage, "--model is required");
  const ModelBundle bundle = load_model(config.model_path);
  std::vector<TruthLabel> predictions;
  for (const Corpus &corpus : load_corpora(config, false)) {
    const LanguageModel &lm = bundle.find(corpus.language());
    check_gender_classes(lm.gender);
    for (const auto &author : corpus.authors()) {
      const SparseVector row = transform(author.document(), lm.vocab);
      const std::string gender = predict(lm.gender, row);
      const std::string variety = predict(lm.variety, row);
      predictions.push_back({author.author_id(), parse_gender(gender), variety});
    }
  }
  std::sort(predictions.begin(), predictions.end(),
            [](const TruthLabel &a, const TruthLabel &b) { return a.author_id < b.author_id; });
  std::string text;
  for (const auto &p : predictions) text += format_truth_line(p) + '\n';
  emit(config, text);
}

void cmd_evaluate(const RunConfig &config) {
  std::vector<EvalReport> reports;
  for (const Corpus &corpus : load_corpora(config, true)) {
    for (Task task : {Task::kGender, Task::kVariety}) {
      reports.push_back(
          cross_validate(corpus, task, config.min_df, config.kernel(), cv_options(config)));
    }
  }
  std::ostringstream out;
  write_eval_csv(out, reports);
  emit(config, out.str());
}

void cmd_sweep(const RunConfig &config) {
  std::vector<EvalReport> reports;
  for (const Corpus &corpus : load_corpora(config, true)) {
    for (Task task : {Task::kGender, Task::kVariety}) {
      auto swept = sweep_min_df(corpus, task, config.kernel(), cv_options(config), config.df_range);
      reports.insert(reports.end(), swept.begin(), swept.end());
    }
  }
  std::ostringstream out;
  write_eval_csv(out, reports);
  emit(config, out.str());
}

void cmd_report(const RunConfig &config) {
  std::ostringstream out;
  out << "language,task,section,class,rank,term,count\n";
  for (const Corpus &corpus : load_corpora(config, true)) {
    const DocTermMatrix dtm = fit_transform(corpus, config.min_df);
    const std::string lang(language_code(corpus.language()));
    for (Task task : {Task::kGender, Task::kVariety}) {
      std::map<std::string, std::string> labels;
      const auto per_author = corpus.task_labels(task);
      for (std::size_t i = 0; i < per_author.size(); ++i) labels[dtm.row_ids[i]] = per_author[i];
      const ClassTermReport report = top_terms_by_class(dtm, labels, config.top_k);
      const std::string prefix = lang + ',' + std::string(task_name(task)) + ',';
      for (const auto &[cls, terms] : report.top) {
        for (std::size_t r = 0; r < terms.size(); ++r) {
          out << prefix << "top," << cls << ',' << r + 1 << ',' << terms[r].term << ','
              << terms[r].count << '\n';
        }
      }
      for (std::size_t r = 0; r < report.common.size(); ++r) {
        for (const auto &[cls, count] : report.common[r].counts) {
          out << prefix << "common," << cls << ',' << r + 1 << ',' << report.common[r].term
              << ',' << count << '\n';
        }
      }
    }
  }
  emit(config, out.str());
}

void cmd_synth(const RunConfig &config) {
  if (config.output_path.empty()) throw Error(ErrorCode::kUsage, "--out DIR is required");
  const SynthSpec spec = make_synth_spec(config.authors, config.tweets, config.language,
                                         config.varieties, config.signal_rate, config.seed);
  write_corpus(generate_synthetic_corpus(spec), config.output_path);
}

void run_command(const RunConfig &config) {
  switch (config.command) {
    case Command::kTrain: cmd_train(config); break;
    case Command::kPredict: cmd_predict(config); break;
    case Command::kEvaluate: cmd_evaluate(config); break;
    case Command::kSweep: cmd_sweep(config); break;
    case Command::kReport: cmd_report(config); break;
    case Command::kSynth: cmd_synth(config); break;
  }
}

std::optional<RunConfig> parse_command_line(int argc, const char *const *argv) {
  RunConfig config;
  CLI::App app{"Author profiling: gender and language variety from tweets", "authorprof"};
  app.require_subcommand(1);

  std::string corpus, truth, model, out, gamma = "auto", df_range = "2..25", language = "en";

  const auto add_corpus = [&](CLI::App *cmd, bool with_truth) {
    cmd->add_option("--corpus", corpus, "Directory of author XML files (or per-language subdirectories)")
        ->required();
    if (with_truth) cmd->add_option("--truth", truth, "Truth file (id:::gender:::variety)");
  };
  const auto add_model_params = [&](CLI::App *cmd) {
    cmd->add_option("--min-df", config.min_df, "Minimum document frequency")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--c", config.c, "SVM box constraint C")->check(CLI::PositiveNumber);
    cmd->add_option("--gamma", gamma, "RBF gamma: auto (1/n_features) or a positive real");
  };
  const auto add_cv = [&](CLI::App *cmd) {
    cmd->add_option("--folds", config.folds, "Cross-validation folds");
    cmd->add_option("--seed", config.seed, "Fold assignment seed");
  };

  CLI::App *train = app.add_subcommand("train", "Train gender and variety models");
  add_corpus(train, true);
  add_model_params(train);
  train->add_option("--model", model, "Model file to write")->required();

  CLI::App *predict_cmd = app.add_subcommand("predict", "Predict id:::gender:::variety lines");
  add_corpus(predict_cmd, true);
  predict_cmd->add_option("--model", model, "Model file")->required();
  predict_cmd->add_option("--out", out, "Predictions file (default stdout)");

  CLI::App *evaluate = app.add_subcommand("evaluate", "Stratified k-fold cross-validation CSV");
  add_corpus(evaluate, true);
  add_model_params(evaluate);
  add_cv(evaluate);
  evaluate->add_option("--out", out, "CSV file (default stdout)");

  CLI::App *sweep = app.add_subcommand("sweep", "Cross-validate across a min_df range");
  add_corpus(sweep, true);
  sweep->add_option("--c", config.c, "SVM box constraint C")->check(CLI::PositiveNumber);
  sweep->add_option("--gamma", gamma, "RBF gamma: auto (1/n_features) or a positive real");
  add_cv(sweep);
  sweep->add_option("--df-range", df_range, "Inclusive min_df range A..B");
  sweep->add_option("--out", out, "CSV file (default stdout)");

  CLI::App *report = app.add_subcommand("report", "Top-k terms per class");
  add_corpus(report, true);
  report->add_option("--min-df", config.min_df, "Minimum document frequency")
      ->check(CLI::PositiveNumber);
  report->add_option("--top-k", config.top_k, "Terms per class");
  report->add_option("--out", out, "CSV file (default stdout)");

  CLI::App *synth = app.add_subcommand("synth", "Write a synthetic corpus");
  synth->add_option("--out", out, "Output directory")->required();
  synth->add_option("--seed", config.seed, "Generator seed");
  synth->add_option("--authors", config.authors, "Number of authors");
  synth->add_option("--tweets", config.tweets, "Tweets per author");
  synth->add_option("--varieties", config.varieties, "Number of varieties");
  synth->add_option("--signal-rate", config.signal_rate, "Per-token signal rate in (0, 1]");
  synth->add_option("--language", language, "Language code (en, es, pt, ar)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &) {
    std::cout << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp &) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError &e) {
    throw Error(ErrorCode::kUsage, e.what());
  }

  if (*train) config.command = Command::kTrain;
  else if (*predict_cmd) config.command = Command::kPredict;
  else if (*evaluate) config.command = Command::kEvaluate;
  else if (*sweep) config.command = Command::kSweep;
  else if (*report) config.command = Command::kReport;
  else config.command = Command::kSynth;

  config.corpus_dir = corpus;
  if (!truth.empty()) config.truth_path = truth;
  config.model_path = model;
  config.output_path = out;
  try {
    config.gamma = parse_gamma(gamma);
    config.df_range = parse_df_range(df_range);
    config.language = parse_language(language);
  } catch (const Error &e) {
    if (e.code() == ErrorCode::kUsage) throw;
    throw Error(ErrorCode::kUsage, e.detail());
  }
  if (config.folds < 2) throw Error(ErrorCode::kUsage, "--folds must be >= 2");
  return config;
}

int run_cli(int argc, const char *const *argv) {
  try {
    const auto config = parse_command_line(argc, argv);
    if (!config) return 0;
    run_command(*config);
    return 0;
  } catch (const Error &e) {
    std::cerr << "authorprof: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::filesystem::filesystem_error &e) {
    std::cerr << "authorprof: io error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "authorprof: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace authorprof
