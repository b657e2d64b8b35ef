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

#ifndef AUTHORPROF_VECTORIZER_H_
#define AUTHORPROF_VECTORIZER_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "authorprof/corpus.h"

namespace authorprof {

// Splits on runs of Unicode White_Space code points (UTF-8). Tokens are
// returned verbatim; there is no case folding.
std::vector<std::string> tokenize(std::string_view text);

// Number of tokens tokenize() would return, without allocating them.
std::size_t count_tokens(std::string_view text);

// (term, occurrences) for one document, sorted by term.
using TermCounts = std::vector<std::pair<std::string, std::uint32_t>>;

TermCounts count_terms(std::string_view document);

struct SparseEntry {
  std::uint32_t column;
  std::uint32_t count;

  friend bool operator==(const SparseEntry &, const SparseEntry &) = default;
  friend auto operator<=>(const SparseEntry &, const SparseEntry &) = default;
};

// One row of a document-term matrix: strictly increasing columns, positive
// counts, all columns below dim().
class SparseVector {
 public:
  SparseVector() = default;
  explicit SparseVector(std::size_t dim) : dim_(dim) {}

  // Throws Error(kShape) if columns are unsorted, repeated or out of range,
  // Error(kValue) on a zero count.
  SparseVector(std::size_t dim, std::vector<SparseEntry> entries);

  std::size_t dim() const { return dim_; }
  const std::vector<SparseEntry> &entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  std::uint64_t total_count() const;
  std::uint64_t squared_norm() const;

  friend bool operator==(const SparseVector &, const SparseVector &) = default;
  friend auto operator<=>(const SparseVector &, const SparseVector &) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<SparseEntry> entries_;
};

// Term -> column map gated by minimum document frequency. Terms are sorted
// lexicographically; column i holds terms()[i].
class Vocabulary {
 public:
  Vocabulary() = default;

  // Entries are (term, document frequency). Throws Error(kParameter) if
  // min_df < 1, Error(kValue) if a df is below min_df or terms are not
  // strictly sorted.
  Vocabulary(std::uint32_t min_df,
             std::vector<std::pair<std::string, std::uint32_t>> entries);

  std::uint32_t min_df() const { return min_df_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const std::vector<std::string> &terms() const { return terms_; }
  const std::vector<std::uint32_t> &doc_freqs() const { return doc_freqs_; }

  std::optional<std::uint32_t> column(std::string_view term) const;
  std::uint32_t doc_freq(std::uint32_t column) const { return doc_freqs_[column]; }

  friend bool operator==(const Vocabulary &a, const Vocabulary &b) {
    return a.min_df_ == b.min_df_ && a.terms_ == b.terms_ && a.doc_freqs_ == b.doc_freqs_;
  }

 private:
  std::uint32_t min_df_ = 1;
  std::vector<std::string> terms_;
  std::vector<std::uint32_t> doc_freqs_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

// Document frequencies over tokenized documents, gated at df >= min_df.
// Throws Error(kParameter) for min_df < 1 or no documents, and
// Error(kEmptyVocabulary) when every term is pruned.
Vocabulary fit_vocabulary(std::span<const std::string> documents, std::uint32_t min_df);
Vocabulary fit_vocabulary(std::span<const TermCounts> documents, std::uint32_t min_df);

SparseVector transform(std::string_view document, const Vocabulary &vocab);
SparseVector transform(const TermCounts &document, const Vocabulary &vocab);

struct DocTermMatrix {
  std::vector<SparseVector> rows;
  Vocabulary vocab;
  std::vector<std::string> row_ids;
};

DocTermMatrix fit_transform(const Corpus &corpus, std::uint32_t min_df);

struct TermTotal {
  std::string term;
  std::uint64_t count;

  friend bool operator==(const TermTotal &, const TermTotal &) = default;
};

// A term present in every class's top-k list, with each class's total.
struct CommonTerm {
  std::string term;
  std::map<std::string, std::uint64_t> counts;
};

struct ClassTermReport {
  std::map<std::string, std::vector<TermTotal>> top;
  std::vector<CommonTerm> common;  // sorted by term; empty with < 2 classes
};

// Per-class top-k terms by summed count (descending, ties by term). Throws
// Error(kConsistency) if a row id is missing from `labels`.
ClassTermReport top_terms_by_class(const DocTermMatrix &matrix,
                                   const std::map<std::string, std::string> &labels,
                                   std::size_t k);

// Text export: header lines `vocabulary 1`, `min_df N`, `terms N`, then one
// `term<TAB>column<TAB>df` line per term.
void write_vocabulary(std::ostream &out, const Vocabulary &vocab);
Vocabulary read_vocabulary(std::istream &in);

}  // namespace authorprof

#endif  // AUTHORPROF_VECTORIZER_H_
