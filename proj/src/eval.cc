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

#include "authorprof/eval.h"

#include <charconv>
#include <chrono>
#include <ostream>

#include "authorprof/errors.h"
#include "authorprof/random.h"

namespace authorprof {
namespace {

std::string format_real(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

std::vector<TermCounts> count_corpus(const Corpus &corpus) {
  std::vector<TermCounts> counted;
  counted.reserve(corpus.size());
  for (const auto &author : corpus.authors()) counted.push_back(count_terms(author.document()));
  return counted;
}

EvalReport run_folds(const Corpus &corpus, std::span<const TermCounts> counted,
                     std::span<const std::string> labels, const FoldPlan &plan, Task task,
                     std::uint32_t min_df, const KernelParams &params,
                     const SolverOptions &solver) {
  EvalReport report;
  report.task = task;
  report.language = corpus.language();
  report.min_df = min_df;
  report.vocab_size = fit_vocabulary(counted, min_df).size();

  std::uint64_t total_us = 0;
  for (std::uint32_t fold = 0; fold < plan.k; ++fold) {
    const Vocabulary vocab = fold_vocabulary(counted, plan, fold, min_df);
    std::vector<SparseVector> rows;
    std::vector<std::string> train_labels;
    for (std::size_t i : plan.train_indices(fold)) {
      rows.push_back(transform(counted[i], vocab));
      train_labels.push_back(labels[i]);
    }
    const auto start = std::chrono::steady_clock::now();
    const MulticlassSvmModel model = train_one_vs_one(rows, train_labels, params, solver);
    const auto us = std::chrono::duration_cast<std::chrono::microseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    report.converged = report.converged && all_converged(model);

    std::vector<std::string> predicted, truth;
    for (std::size_t i : plan.test_indices(fold)) {
      predicted.push_back(predict(model, transform(counted[i], vocab)));
      truth.push_back(labels[i]);
    }
    report.fold_accuracies.push_back(accuracy(predicted, truth));
    report.fold_vocab_sizes.push_back(vocab.size());
    report.fold_train_time_us.push_back(static_cast<std::uint64_t>(us));
    total_us += static_cast<std::uint64_t>(us);
  }
  report.average_accuracy = average_accuracy(report.fold_accuracies);
  report.train_time_ms = total_us / 1000;
  return report;
}

}  // namespace

double accuracy(std::span<const std::string> predicted, std::span<const std::string> truth) {
  if (predicted.size() != truth.size()) {
    throw Error(ErrorCode::kShape, "prediction and truth lists differ in length");
  }
  if (predicted.empty()) throw Error(ErrorCode::kUndefinedMetric, "accuracy of an empty list");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) correct += predicted[i] == truth[i];
  return static_cast<double>(correct) / static_cast<double>(predicted.size());
}

double average_accuracy(std::span<const double> fold_accuracies) {
  if (fold_accuracies.empty()) {
    throw Error(ErrorCode::kUndefinedMetric, "average of zero fold accuracies");
  }
  double sum = 0.0;
  for (double a : fold_accuracies) sum += a;
  return sum / static_cast<double>(fold_accuracies.size());
}

std::vector<std::size_t> FoldPlan::train_indices(std::uint32_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (assignments[i] != fold) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FoldPlan::test_indices(std::uint32_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (assignments[i] == fold) out.push_back(i);
  }
  return out;
}

FoldPlan make_folds(std::span<const std::string> labels, std::uint32_t k, std::uint64_t seed) {
  if (k < 2) throw Error(ErrorCode::kParameter, "fold count must be >= 2");
  std::map<std::string, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);
  for (const auto &[cls, members] : by_class) {
    if (members.size() < k) {
      throw Error(ErrorCode::kStratification,
                  "class '" + cls + "' has " + std::to_string(members.size()) +
                      " members, fewer than " + std::to_string(k) + " folds");
    }
  }
  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.assignments.assign(labels.size(), 0);
  Rng rng(seed);
  std::size_t next = 0;
  for (auto &[cls, members] : by_class) {
    rng.shuffle(members.begin(), members.end());
    for (std::size_t idx : members) {
      plan.assignments[idx] = static_cast<std::uint32_t>(next % k);
      ++next;
    }
  }
  return plan;
}

Vocabulary fold_vocabulary(std::span<const TermCounts> documents, const FoldPlan &plan,
                           std::uint32_t fold, std::uint32_t min_df) {
  std::vector<TermCounts> train;
  for (std::size_t i : plan.train_indices(fold)) train.push_back(documents[i]);
  try {
    return fit_vocabulary(std::span<const TermCounts>(train), min_df);
  } catch (const Error &e) {
    if (e.code() != ErrorCode::kEmptyVocabulary) throw;
    throw Error(ErrorCode::kEmptyVocabulary,
                "fold " + std::to_string(fold) + ": every term pruned at min_df " +
                    std::to_string(min_df));
  }
}

EvalReport cross_validate(const Corpus &corpus, Task task, std::uint32_t min_df,
                          const KernelParams &params, const CvOptions &options) {
  const auto labels = corpus.task_labels(task);
  const FoldPlan plan = make_folds(labels, options.k, options.seed);
  const auto counted = count_corpus(corpus);
  return run_folds(corpus, counted, labels, plan, task, min_df, params, options.solver);
}

DfRange parse_df_range(std::string_view text) {
  const auto dots = text.find("..");
  const auto bad = [&] {
    return Error(ErrorCode::kParameter, "df range must look like A..B, got '" + std::string(text) + "'");
  };
  if (dots == std::string_view::npos) throw bad();
  DfRange range;
  const auto parse = [&](std::string_view part, std::uint32_t &out) {
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
    if (ec != std::errc() || ptr != part.data() + part.size() || part.empty()) throw bad();
  };
  parse(text.substr(0, dots), range.first);
  parse(text.substr(dots + 2), range.last);
  if (range.first < 1 || range.last < range.first) throw bad();
  return range;
}

std::vector<EvalReport> sweep_min_df(const Corpus &corpus, Task task, const KernelParams &params,
                                     const CvOptions &options, DfRange range) {
  if (range.first < 1 || range.last < range.first) {
    throw Error(ErrorCode::kParameter, "invalid min_df range");
  }
  const auto labels = corpus.task_labels(task);
  const FoldPlan plan = make_folds(labels, options.k, options.seed);
  const auto counted = count_corpus(corpus);
  std::vector<EvalReport> reports;
  for (std::uint32_t df = range.first; df <= range.last; ++df) {
    reports.push_back(run_folds(corpus, counted, labels, plan, task, df, params, options.solver));
  }
  return reports;
}

void write_eval_csv(std::ostream &out, std::span<const EvalReport> reports) {
  out << kEvalCsvHeader << '\n';
  for (const auto &r : reports) {
    const std::string prefix = std::string(language_code(r.language)) + ',' +
                               std::string(task_name(r.task)) + ',' + std::to_string(r.min_df) +
                               ',';
    for (std::size_t f = 0; f < r.fold_accuracies.size(); ++f) {
      const std::uint64_t us = f < r.fold_train_time_us.size() ? r.fold_train_time_us[f] : 0;
      out << prefix << f << ',' << format_real(r.fold_accuracies[f]) << ",,"
          << r.vocab_size << ',' << us / 1000 << '\n';
    }
    out << prefix << "mean,," << format_real(r.average_accuracy) << ',' << r.vocab_size << ','
        << r.train_time_ms << '\n';
  }
}

}  // namespace authorprof
