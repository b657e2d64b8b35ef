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

#ifndef AUTHORPROF_EVAL_H_
#define AUTHORPROF_EVAL_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "authorprof/corpus.h"
#include "authorprof/svm.h"
#include "authorprof/vectorizer.h"

namespace authorprof {

// Fraction of positions where predicted == truth. Throws Error(kShape) on a
// length mismatch and Error(kUndefinedMetric) on empty input.
double accuracy(std::span<const std::string> predicted, std::span<const std::string> truth);

// Plain mean of the fold accuracies.
double average_accuracy(std::span<const double> fold_accuracies);

struct FoldPlan {
  std::uint32_t k = 0;
  std::vector<std::uint32_t> assignments;  // fold id per author index
  std::uint64_t seed = 0;

  std::vector<std::size_t> train_indices(std::uint32_t fold) const;
  std::vector<std::size_t> test_indices(std::uint32_t fold) const;
};

// Stratified assignment: each class is shuffled with `seed` and dealt
// round-robin, continuing where the previous class stopped. Throws
// Error(kParameter) for k < 2 and Error(kStratification) if a class has
// fewer than k members.
FoldPlan make_folds(std::span<const std::string> labels, std::uint32_t k, std::uint64_t seed);

struct EvalReport {
  Task task = Task::kGender;
  Language language = Language::kEn;
  std::uint32_t min_df = 1;
  std::vector<double> fold_accuracies;
  double average_accuracy = 0.0;
  // Vocabulary size of a fit on the whole corpus.
  std::size_t vocab_size = 0;
  std::uint64_t train_time_ms = 0;

  std::vector<std::size_t> fold_vocab_sizes;
  std::vector<std::uint64_t> fold_train_time_us;
  bool converged = true;
};

struct CvOptions {
  std::uint32_t k = 10;
  std::uint64_t seed = 0;
  SolverOptions solver;
};

// Vocabulary of one fold, fitted on its training split only.
Vocabulary fold_vocabulary(std::span<const TermCounts> documents, const FoldPlan &plan,
                           std::uint32_t fold, std::uint32_t min_df);

// k-fold cross-validation. Every fold refits the vocabulary on its training
// split, trains on it and scores the held-out authors.
EvalReport cross_validate(const Corpus &corpus, Task task, std::uint32_t min_df,
                          const KernelParams &params, const CvOptions &options = {});

struct DfRange {
  std::uint32_t first = 2;
  std::uint32_t last = 25;
};

// Parses "A..B" (inclusive). Throws Error(kParameter).
DfRange parse_df_range(std::string_view text);

// One report per min_df in ascending order, all sharing the same folds.
std::vector<EvalReport> sweep_min_df(const Corpus &corpus, Task task, const KernelParams &params,
                                     const CvOptions &options, DfRange range = {});

// Header plus, per report, one row per fold and one summary row whose fold
// column reads "mean".
void write_eval_csv(std::ostream &out, std::span<const EvalReport> reports);

inline constexpr std::string_view kEvalCsvHeader =
    "language,task,min_df,fold,accuracy,average_accuracy,vocab_size,train_time_ms";

// Synthetic stand-in for a PAN corpus.
struct ClassSignal {
  std::vector<std::string> tokens;
  double rate = 0.0;  // chance that a token is drawn from `tokens`
};

struct SynthSpec {
  std::size_t n_authors = 200;
  std::size_t tweets_per_author = 100;
  std::size_t tokens_per_tweet = 8;
  Language language = Language::kEn;
  std::vector<std::string> gender_classes{"female", "male"};
  std::vector<std::string> variety_classes;
  std::map<std::string, ClassSignal> gender_signal;
  std::map<std::string, ClassSignal> variety_signal;
  // Background tokens shared by every class, weighted 1/(rank + 10).
  std::size_t shared_vocab_size = 3000;
  std::uint64_t seed = 0;
};

// SynthSpec with `n_varieties` varieties of `language`, `signal_tokens` distinct
// signal tokens per class and the same signal rate for every class.
SynthSpec make_synth_spec(std::size_t n_authors, std::size_t tweets_per_author,
                          Language language, std::size_t n_varieties, double signal_rate,
                          std::uint64_t seed, std::size_t signal_tokens = 10);

// Each token is a gender-signal token with the author's gender rate, else a
// variety-signal token with the variety rate, else a background token.
// Throws Error(kParameter) on an invalid spec.
Corpus generate_synthetic_corpus(const SynthSpec &spec);

}  // namespace authorprof

#endif  // AUTHORPROF_EVAL_H_
