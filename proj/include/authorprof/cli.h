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

#ifndef AUTHORPROF_CLI_H_
#define AUTHORPROF_CLI_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "authorprof/corpus.h"
#include "authorprof/eval.h"
#include "authorprof/svm.h"

namespace authorprof {

enum class Command { kTrain, kPredict, kEvaluate, kSweep, kReport, kSynth };

// Defaults reproduce the reference operating point: min_df 10, C 1,
// gamma auto, 10 folds.
struct RunConfig {
  Command command = Command::kEvaluate;
  std::filesystem::path corpus_dir;
  std::optional<std::filesystem::path> truth_path;
  std::filesystem::path model_path;
  std::filesystem::path output_path;  // empty: standard output
  std::uint32_t min_df = 10;
  double c = 1.0;
  Gamma gamma = Gamma::automatic();
  std::uint32_t folds = 10;
  std::uint64_t seed = 0;
  DfRange df_range{2, 25};
  std::size_t top_k = 20;

  // synth only
  std::size_t authors = 200;
  std::size_t tweets = 100;
  std::size_t varieties = 3;
  double signal_rate = 0.3;
  Language language = Language::kEn;

  KernelParams kernel() const { return KernelParams{gamma, c}; }
};

// Throws Error(kUsage) on bad arguments. Returns nullopt when help was
// printed.
std::optional<RunConfig> parse_command_line(int argc, const char *const *argv);

// A corpus directory holds author XML files directly, or one subdirectory
// per language each holding its own XML files and truth.txt. Labels come
// from --truth or the directory's truth.txt; with `require_labels` a
// corpus without either is a usage error.
std::vector<Corpus> load_corpora(const RunConfig &config, bool require_labels);

void cmd_train(const RunConfig &config);
void cmd_predict(const RunConfig &config);
void cmd_evaluate(const RunConfig &config);
void cmd_sweep(const RunConfig &config);
void cmd_report(const RunConfig &config);
void cmd_synth(const RunConfig &config);

void run_command(const RunConfig &config);

// Entry point: parses, runs, and maps errors to exit codes (0 success,
// 1 usage, 2 data, 3 numeric) with a one-line diagnostic on stderr.
int run_cli(int argc, const char *const *argv);

}  // namespace authorprof

#endif  // AUTHORPROF_CLI_H_
