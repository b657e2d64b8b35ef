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

#ifndef AUTHORPROF_CORPUS_H_
#define AUTHORPROF_CORPUS_H_

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace authorprof {

enum class Language { kEn, kEs, kPt, kAr };

// Two-letter code used in the XML `lang` attribute and in CSV output.
std::string_view language_code(Language language);

// Accepts the codes returned by language_code(), case-insensitively.
Language parse_language(std::string_view code);

// Closed set of variety labels for a language (en=6, es=7, pt=2, ar=4).
const std::vector<std::string> &language_varieties(Language language);

bool is_known_variety(Language language, std::string_view variety);

enum class Gender { kMale, kFemale };

std::string_view gender_name(Gender gender);
Gender parse_gender(std::string_view token);

// Which truth column a classifier is trained against.
enum class Task { kGender, kVariety };

std::string_view task_name(Task task);

// Tweets joined by a single space.
std::string concat_tweets(std::span<const std::string> tweets);

// One author and their concatenated document. Immutable once built.
class AuthorRecord {
 public:
  AuthorRecord(std::string author_id, Language language,
               std::vector<std::string> tweets);

  const std::string &author_id() const { return author_id_; }
  Language language() const { return language_; }
  const std::vector<std::string> &tweets() const { return tweets_; }
  const std::string &document() const { return document_; }

  friend bool operator==(const AuthorRecord &, const AuthorRecord &) = default;

 private:
  std::string author_id_;
  Language language_;
  std::vector<std::string> tweets_;
  std::string document_;
};

std::string concat_tweets(const AuthorRecord &record);

struct TruthLabel {
  std::string author_id;
  Gender gender;
  std::string variety;

  friend bool operator==(const TruthLabel &, const TruthLabel &) = default;
};

std::string class_label(const TruthLabel &label, Task task);

// Authors of a single language, sorted by id, with optional labels.
class Corpus {
 public:
  // Validates the corpus invariants and sorts authors by id. Throws
  // Error(kConsistency) on duplicate ids, mixed languages, labels that match
  // no author, or varieties outside the language's closed set.
  static Corpus create(std::vector<AuthorRecord> authors,
                       std::vector<TruthLabel> labels);

  Language language() const { return language_; }
  const std::vector<AuthorRecord> &authors() const { return authors_; }
  const std::map<std::string, TruthLabel> &labels() const { return labels_; }

  std::size_t size() const { return authors_.size(); }
  bool fully_labeled() const { return labels_.size() == authors_.size(); }

  // Per-author class labels in author order. Throws Error(kConsistency) if
  // any author is unlabeled.
  std::vector<std::string> task_labels(Task task) const;

  std::vector<std::string> documents() const;

  friend bool operator==(const Corpus &, const Corpus &) = default;

 private:
  Corpus() = default;

  Language language_ = Language::kEn;
  std::vector<AuthorRecord> authors_;
  std::map<std::string, TruthLabel> labels_;
};

// Parses PAN-style author XML: <author lang=".."><documents><document>..
// Flat <document> children directly under <author> are accepted as well.
AuthorRecord parse_author_xml(const std::filesystem::path &path);

// Same as parse_author_xml() on in-memory bytes. `source` names the input in
// diagnostics.
AuthorRecord parse_author_xml_bytes(std::string_view bytes,
                                    std::string author_id,
                                    std::string_view source);

std::string format_author_xml(const AuthorRecord &record);

// `id:::gender:::variety` lines. Blank lines are skipped.
std::vector<TruthLabel> parse_truth_file(const std::filesystem::path &path);
std::vector<TruthLabel> parse_truth_text(std::string_view text,
                                         std::string_view source);

std::string format_truth_line(const TruthLabel &label);

// Reads every `*.xml` file in `dir`. Without a truth path the corpus is
// unlabeled (prediction mode).
Corpus load_corpus(const std::filesystem::path &dir,
                   const std::optional<std::filesystem::path> &truth);

// Writes `<id>.xml` per author plus `truth.txt` when the corpus has labels.
void write_corpus(const Corpus &corpus, const std::filesystem::path &dir);

inline constexpr std::string_view kTruthFileName = "truth.txt";

}  // namespace authorprof

#endif  // AUTHORPROF_CORPUS_H_
