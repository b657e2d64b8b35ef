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

#include "authorprof/vectorizer.h"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "authorprof/errors.h"

namespace authorprof {
namespace {

// Byte length of the Unicode whitespace code point starting at text[pos], or
// 0 if the code point there is not whitespace.
std::size_t whitespace_length(std::string_view text, std::size_t pos) {
  const auto byte = [&](std::size_t i) -> unsigned {
    return pos + i < text.size() ? static_cast<unsigned char>(text[pos + i]) : 0u;
  };
  const unsigned b0 = byte(0);
  if (b0 == 0x20 || (b0 >= 0x09 && b0 <= 0x0D)) return 1;
  if (b0 < 0x80) return 0;
  if (b0 == 0xC2) return (byte(1) == 0x85 || byte(1) == 0xA0) ? 2 : 0;
  if (b0 == 0xE1) return (byte(1) == 0x9A && byte(2) == 0x80) ? 3 : 0;
  if (b0 == 0xE2) {
    const unsigned b1 = byte(1), b2 = byte(2);
    if (b1 == 0x80 && ((b2 >= 0x80 && b2 <= 0x8A) || b2 == 0xA8 || b2 == 0xA9 || b2 == 0xAF)) {
      return 3;
    }
    if (b1 == 0x81 && b2 == 0x9F) return 3;
    return 0;
  }
  if (b0 == 0xE3) return (byte(1) == 0x80 && byte(2) == 0x80) ? 3 : 0;
  return 0;
}

template <typename Fn>
void for_each_token(std::string_view text, Fn &&fn) {
  std::size_t pos = 0;
  std::size_t start = std::string_view::npos;
  while (pos < text.size()) {
    const std::size_t ws = whitespace_length(text, pos);
    if (ws > 0) {
      if (start != std::string_view::npos) {
        fn(text.substr(start, pos - start));
        start = std::string_view::npos;
      }
      pos += ws;
    } else {
      if (start == std::string_view::npos) start = pos;
      ++pos;
    }
  }
  if (start != std::string_view::npos) fn(text.substr(start));
}

std::string expect_line(std::istream &in, std::string_view what) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::kFormat, "vocabulary: unexpected end of input, expected " +
                                        std::string(what));
  }
  return line;
}

std::uint64_t parse_count(std::string_view field, std::string_view what) {
  std::uint64_t value = 0;
  if (field.empty()) throw Error(ErrorCode::kFormat, "vocabulary: empty " + std::string(what));
  for (char c : field) {
    if (c < '0' || c > '9') {
      throw Error(ErrorCode::kFormat, "vocabulary: bad " + std::string(what) + " '" +
                                          std::string(field) + "'");
    }
    value = value * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return value;
}

std::uint64_t parse_header(std::istream &in, std::string_view key) {
  const std::string line = expect_line(in, key);
  const std::string prefix = std::string(key) + " ";
  if (line.rfind(prefix, 0) != 0) {
    throw Error(ErrorCode::kFormat, "vocabulary: expected '" + std::string(key) +
                                        "' header, got '" + line + "'");
  }
  return parse_count(std::string_view(line).substr(prefix.size()), key);
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  for_each_token(text, [&](std::string_view token) { tokens.emplace_back(token); });
  return tokens;
}

std::size_t count_tokens(std::string_view text) {
  std::size_t n = 0;
  for_each_token(text, [&](std::string_view) { ++n; });
  return n;
}

TermCounts count_terms(std::string_view document) {
  std::unordered_map<std::string_view, std::uint32_t> counts;
  for_each_token(document, [&](std::string_view token) { ++counts[token]; });
  TermCounts out;
  out.reserve(counts.size());
  for (const auto &[term, count] : counts) out.emplace_back(std::string(term), count);
  std::sort(out.begin(), out.end());
  return out;
}

SparseVector::SparseVector(std::size_t dim, std::vector<SparseEntry> entries)
    : dim_(dim), entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].column >= dim_) {
      throw Error(ErrorCode::kShape, "sparse column " + std::to_string(entries_[i].column) +
                                         " out of range for dim " + std::to_string(dim_));
    }
    if (i > 0 && entries_[i].column <= entries_[i - 1].column) {
      throw Error(ErrorCode::kShape, "sparse columns must be strictly increasing");
    }
    if (entries_[i].count == 0) throw Error(ErrorCode::kValue, "sparse counts must be positive");
  }
}

std::uint64_t SparseVector::total_count() const {
  std::uint64_t sum = 0;
  for (const auto &e : entries_) sum += e.count;
  return sum;
}

std::uint64_t SparseVector::squared_norm() const {
  std::uint64_t sum = 0;
  for (const auto &e : entries_) sum += std::uint64_t{e.count} * e.count;
  return sum;
}

Vocabulary::Vocabulary(std::uint32_t min_df,
                       std::vector<std::pair<std::string, std::uint32_t>> entries)
    : min_df_(min_df) {
  if (min_df < 1) throw Error(ErrorCode::kParameter, "min_df must be >= 1");
  terms_.reserve(entries.size());
  doc_freqs_.reserve(entries.size());
  index_.reserve(entries.size());
  for (auto &[term, df] : entries) {
    if (df < min_df) {
      throw Error(ErrorCode::kValue, "term '" + term + "' has df " + std::to_string(df) +
                                         " below min_df " + std::to_string(min_df));
    }
    if (!terms_.empty() && !(terms_.back() < term)) {
      throw Error(ErrorCode::kValue, "vocabulary terms must be strictly sorted");
    }
    index_.emplace(term, static_cast<std::uint32_t>(terms_.size()));
    terms_.push_back(std::move(term));
    doc_freqs_.push_back(df);
  }
}

std::optional<std::uint32_t> Vocabulary::column(std::string_view term) const {
  auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vocabulary fit_vocabulary(std::span<const TermCounts> documents, std::uint32_t min_df) {
  if (min_df < 1) throw Error(ErrorCode::kParameter, "min_df must be >= 1");
  if (documents.empty()) throw Error(ErrorCode::kParameter, "no documents to fit");
  std::unordered_map<std::string_view, std::uint32_t> df;
  for (const auto &doc : documents) {
    for (const auto &[term, count] : doc) ++df[term];
  }
  std::vector<std::pair<std::string, std::uint32_t>> kept;
  for (const auto &[term, n] : df) {
    if (n >= min_df) kept.emplace_back(std::string(term), n);
  }
  if (kept.empty()) {
    throw Error(ErrorCode::kEmptyVocabulary,
                "every term has document frequency below min_df " + std::to_string(min_df));
  }
  std::sort(kept.begin(), kept.end());
  return Vocabulary(min_df, std::move(kept));
}

Vocabulary fit_vocabulary(std::span<const std::string> documents, std::uint32_t min_df) {
  std::vector<TermCounts> counted;
  counted.reserve(documents.size());
  for (const auto &doc : documents) counted.push_back(count_terms(doc));
  return fit_vocabulary(std::span<const TermCounts>(counted), min_df);
}

SparseVector transform(const TermCounts &document, const Vocabulary &vocab) {
  std::vector<SparseEntry> entries;
  for (const auto &[term, count] : document) {
    if (auto col = vocab.column(term)) entries.push_back({*col, count});
  }
  // Both term lists are sorted, so columns already come out increasing.
  return SparseVector(vocab.size(), std::move(entries));
}

SparseVector transform(std::string_view document, const Vocabulary &vocab) {
  return transform(count_terms(document), vocab);
}

DocTermMatrix fit_transform(const Corpus &corpus, std::uint32_t min_df) {
  std::vector<TermCounts> counted;
  counted.reserve(corpus.size());
  for (const auto &author : corpus.authors()) counted.push_back(count_terms(author.document()));
  DocTermMatrix matrix;
  matrix.vocab = fit_vocabulary(std::span<const TermCounts>(counted), min_df);
  matrix.rows.reserve(counted.size());
  for (std::size_t i = 0; i < counted.size(); ++i) {
    matrix.rows.push_back(transform(counted[i], matrix.vocab));
    matrix.row_ids.push_back(corpus.authors()[i].author_id());
  }
  return matrix;
}

ClassTermReport top_terms_by_class(const DocTermMatrix &matrix,
                                   const std::map<std::string, std::string> &labels,
                                   std::size_t k) {
  std::map<std::string, std::vector<std::uint64_t>> totals;
  for (std::size_t r = 0; r < matrix.rows.size(); ++r) {
    auto it = labels.find(matrix.row_ids[r]);
    if (it == labels.end()) {
      throw Error(ErrorCode::kConsistency, "row '" + matrix.row_ids[r] + "' has no class label");
    }
    auto &sums = totals[it->second];
    sums.resize(matrix.vocab.size(), 0);
    for (const auto &e : matrix.rows[r].entries()) sums[e.column] += e.count;
  }

  ClassTermReport report;
  for (const auto &[cls, sums] : totals) {
    std::vector<std::uint32_t> cols;
    for (std::uint32_t c = 0; c < sums.size(); ++c) {
      if (sums[c] > 0) cols.push_back(c);
    }
    // Columns are in term order, so a stable sort on count keeps ties
    // lexicographic.
    std::stable_sort(cols.begin(), cols.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return sums[a] > sums[b]; });
    if (cols.size() > k) cols.resize(k);
    auto &top = report.top[cls];
    for (std::uint32_t c : cols) top.push_back({matrix.vocab.terms()[c], sums[c]});
  }

  if (report.top.size() < 2) return report;
  std::set<std::string> common;
  for (const auto &t : report.top.begin()->second) common.insert(t.term);
  for (const auto &[cls, top] : report.top) {
    std::set<std::string> here;
    for (const auto &t : top) {
      if (common.count(t.term)) here.insert(t.term);
    }
    common = std::move(here);
  }
  for (const auto &term : common) {
    CommonTerm entry{term, {}};
    const std::uint32_t col = *matrix.vocab.column(term);
    for (const auto &[cls, sums] : totals) entry.counts[cls] = sums[col];
    report.common.push_back(std::move(entry));
  }
  return report;
}

void write_vocabulary(std::ostream &out, const Vocabulary &vocab) {
  out << "vocabulary 1\n"
      << "min_df " << vocab.min_df() << '\n'
      << "terms " << vocab.size() << '\n';
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    out << vocab.terms()[i] << '\t' << i << '\t' << vocab.doc_freqs()[i] << '\n';
  }
}

Vocabulary read_vocabulary(std::istream &in) {
  const std::string magic = expect_line(in, "vocabulary header");
  if (magic != "vocabulary 1") {
    throw Error(ErrorCode::kFormat, "vocabulary: unsupported header '" + magic + "'");
  }
  const auto min_df = parse_header(in, "min_df");
  const auto n = parse_header(in, "terms");
  std::vector<std::pair<std::string, std::uint32_t>> entries;
  entries.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::string line = expect_line(in, "term line");
    const auto tab1 = line.find('\t');
    const auto tab2 = tab1 == std::string::npos ? tab1 : line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos) {
      throw Error(ErrorCode::kFormat, "vocabulary: malformed term line '" + line + "'");
    }
    const std::string_view view(line);
    if (parse_count(view.substr(tab1 + 1, tab2 - tab1 - 1), "column") != i) {
      throw Error(ErrorCode::kFormat, "vocabulary: column ids must be consecutive");
    }
    entries.emplace_back(line.substr(0, tab1),
                         static_cast<std::uint32_t>(parse_count(view.substr(tab2 + 1), "df")));
  }
  return Vocabulary(static_cast<std::uint32_t>(min_df), std::move(entries));
}

}  // namespace authorprof
