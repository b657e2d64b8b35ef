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

#include "authorprof/corpus.h"

#include <expat.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <memory>
#include <set>
#include <sstream>

#include "authorprof/errors.h"

namespace authorprof {
namespace {

namespace fs = std::filesystem;

std::string read_file(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char &c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Expat callbacks collect the text of every <document> that sits directly
// under the root or under a root-level <documents> wrapper.
struct XmlState {
  int depth = 0;
  bool root_seen = false;
  std::optional<std::string> lang;
  bool in_wrapper = false;
  int document_depth = 0;  // depth of the open <document>, 0 if none
  std::string text;
  std::vector<std::string> tweets;
};

void on_start(void *data, const XML_Char *name, const XML_Char **attrs) {
  auto *state = static_cast<XmlState *>(data);
  ++state->depth;
  std::string_view tag(name);
  if (state->depth == 1) {
    state->root_seen = true;
    for (const XML_Char **a = attrs; *a != nullptr; a += 2) {
      if (std::string_view(a[0]) == "lang") state->lang = a[1];
    }
    return;
  }
  if (state->document_depth != 0) return;
  if (state->depth == 2 && tag == "documents") {
    state->in_wrapper = true;
  } else if (tag == "document" &&
             (state->depth == 2 || (state->depth == 3 && state->in_wrapper))) {
    state->document_depth = state->depth;
    state->text.clear();
  }
}

void on_end(void *data, const XML_Char *name) {
  auto *state = static_cast<XmlState *>(data);
  if (state->document_depth == state->depth) {
    state->tweets.push_back(std::move(state->text));
    state->text.clear();
    state->document_depth = 0;
  } else if (state->depth == 2 && std::string_view(name) == "documents") {
    state->in_wrapper = false;
  }
  --state->depth;
}

void on_text(void *data, const XML_Char *s, int len) {
  auto *state = static_cast<XmlState *>(data);
  if (state->document_depth != 0) state->text.append(s, static_cast<std::size_t>(len));
}

void append_escaped(std::string &out, std::string_view text) {
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '\r': out += "&#13;"; break;
      default: out += c;
    }
  }
}

}  // namespace

std::string_view language_code(Language language) {
  switch (language) {
    case Language::kEn: return "en";
    case Language::kEs: return "es";
    case Language::kPt: return "pt";
    case Language::kAr: return "ar";
  }
  return "en";
}

Language parse_language(std::string_view code) {
  const std::string lower = lower_ascii(code);
  if (lower == "en") return Language::kEn;
  if (lower == "es") return Language::kEs;
  if (lower == "pt") return Language::kPt;
  if (lower == "ar") return Language::kAr;
  throw Error(ErrorCode::kValue, "unknown language code '" + std::string(code) + "'");
}

const std::vector<std::string> &language_varieties(Language language) {
  static const std::vector<std::string> en = {
      "australia", "canada", "great britain", "ireland", "new zealand", "united states"};
  static const std::vector<std::string> es = {
      "argentina", "chile", "colombia", "mexico", "peru", "spain", "venezuela"};
  static const std::vector<std::string> pt = {"brazil", "portugal"};
  static const std::vector<std::string> ar = {"egypt", "gulf", "levantine", "maghrebi"};
  switch (language) {
    case Language::kEn: return en;
    case Language::kEs: return es;
    case Language::kPt: return pt;
    case Language::kAr: return ar;
  }
  return en;
}

bool is_known_variety(Language language, std::string_view variety) {
  const auto &set = language_varieties(language);
  return std::find(set.begin(), set.end(), variety) != set.end();
}

std::string_view gender_name(Gender gender) {
  return gender == Gender::kMale ? "male" : "female";
}

Gender parse_gender(std::string_view token) {
  if (token == "male") return Gender::kMale;
  if (token == "female") return Gender::kFemale;
  throw Error(ErrorCode::kValue, "unknown gender '" + std::string(token) + "'");
}

std::string_view task_name(Task task) {
  return task == Task::kGender ? "gender" : "variety";
}

std::string concat_tweets(std::span<const std::string> tweets) {
  std::size_t total = 0;
  for (const auto &t : tweets) total += t.size() + 1;
  std::string out;
  out.reserve(total);
  for (std::size_t i = 0; i < tweets.size(); ++i) {
    if (i > 0) out += ' ';
    out += tweets[i];
  }
  return out;
}

std::string concat_tweets(const AuthorRecord &record) {
  return concat_tweets(record.tweets());
}

AuthorRecord::AuthorRecord(std::string author_id, Language language,
                           std::vector<std::string> tweets)
    : author_id_(std::move(author_id)),
      language_(language),
      tweets_(std::move(tweets)),
      document_(concat_tweets(tweets_)) {
  if (author_id_.empty()) throw Error(ErrorCode::kSchema, "empty author id");
}

std::string class_label(const TruthLabel &label, Task task) {
  return task == Task::kGender ? std::string(gender_name(label.gender)) : label.variety;
}

Corpus Corpus::create(std::vector<AuthorRecord> authors,
                      std::vector<TruthLabel> labels) {
  if (authors.empty()) throw Error(ErrorCode::kConsistency, "corpus has no authors");
  std::sort(authors.begin(), authors.end(),
            [](const AuthorRecord &a, const AuthorRecord &b) {
              return a.author_id() < b.author_id();
            });
  Corpus corpus;
  corpus.language_ = authors.front().language();
  for (std::size_t i = 0; i < authors.size(); ++i) {
    if (i > 0 && authors[i].author_id() == authors[i - 1].author_id()) {
      throw Error(ErrorCode::kConsistency, "duplicate author id '" + authors[i].author_id() + "'");
    }
    if (authors[i].language() != corpus.language_) {
      throw Error(ErrorCode::kConsistency,
                  "author '" + authors[i].author_id() + "' has language '" +
                      std::string(language_code(authors[i].language())) +
                      "' but corpus language is '" +
                      std::string(language_code(corpus.language_)) + "'");
    }
  }
  for (auto &label : labels) {
    auto it = std::lower_bound(authors.begin(), authors.end(), label.author_id,
                               [](const AuthorRecord &a, const std::string &id) {
                                 return a.author_id() < id;
                               });
    if (it == authors.end() || it->author_id() != label.author_id) {
      throw Error(ErrorCode::kConsistency,
                  "truth label references unknown author '" + label.author_id + "'");
    }
    if (!is_known_variety(corpus.language_, label.variety)) {
      throw Error(ErrorCode::kConsistency,
                  "variety '" + label.variety + "' of author '" + label.author_id +
                      "' is not a " + std::string(language_code(corpus.language_)) +
                      " variety");
    }
    if (corpus.labels_.count(label.author_id) != 0) {
      throw Error(ErrorCode::kConsistency, "duplicate truth label for '" + label.author_id + "'");
    }
    std::string id = label.author_id;
    corpus.labels_.emplace(std::move(id), std::move(label));
  }
  corpus.authors_ = std::move(authors);
  return corpus;
}

std::vector<std::string> Corpus::task_labels(Task task) const {
  std::vector<std::string> out;
  out.reserve(authors_.size());
  for (const auto &author : authors_) {
    auto it = labels_.find(author.author_id());
    if (it == labels_.end()) {
      throw Error(ErrorCode::kConsistency, "author '" + author.author_id() + "' has no truth label");
    }
    out.push_back(class_label(it->second, task));
  }
  return out;
}

std::vector<std::string> Corpus::documents() const {
  std::vector<std::string> out;
  out.reserve(authors_.size());
  for (const auto &author : authors_) out.push_back(author.document());
  return out;
}

AuthorRecord parse_author_xml_bytes(std::string_view bytes, std::string author_id,
                                    std::string_view source) {
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(
      XML_ParserCreate(nullptr), &XML_ParserFree);
  if (!parser) throw Error(ErrorCode::kIo, "cannot allocate XML parser");
  XmlState state;
  XML_SetUserData(parser.get(), &state);
  XML_SetElementHandler(parser.get(), on_start, on_end);
  XML_SetCharacterDataHandler(parser.get(), on_text);
  if (XML_Parse(parser.get(), bytes.data(), static_cast<int>(bytes.size()), XML_TRUE) ==
      XML_STATUS_ERROR) {
    std::ostringstream msg;
    msg << source << ": byte offset " << XML_GetCurrentByteIndex(parser.get()) << ": "
        << XML_ErrorString(XML_GetErrorCode(parser.get()));
    throw Error(ErrorCode::kParse, msg.str());
  }
  if (!state.lang) {
    throw Error(ErrorCode::kSchema, std::string(source) + ": root element has no lang attribute");
  }
  if (state.tweets.empty()) {
    throw Error(ErrorCode::kSchema, std::string(source) + ": no document elements");
  }
  Language language;
  try {
    language = parse_language(*state.lang);
  } catch (const Error &e) {
    throw Error(ErrorCode::kSchema, std::string(source) + ": " + e.what());
  }
  return AuthorRecord(std::move(author_id), language, std::move(state.tweets));
}

AuthorRecord parse_author_xml(const fs::path &path) {
  return parse_author_xml_bytes(read_file(path), path.stem().string(), path.string());
}

std::string format_author_xml(const AuthorRecord &record) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<author lang=\"";
  out += language_code(record.language());
  out += "\">\n\t<documents>\n";
  for (const auto &tweet : record.tweets()) {
    out += "\t\t<document>";
    append_escaped(out, tweet);
    out += "</document>\n";
  }
  out += "\t</documents>\n</author>\n";
  return out;
}

std::vector<TruthLabel> parse_truth_text(std::string_view text, std::string_view source) {
  std::vector<TruthLabel> labels;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) {
      line.remove_suffix(1);
    }
    if (line.empty()) continue;

    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
      std::size_t sep = line.find(":::", start);
      fields.push_back(line.substr(start, sep == std::string_view::npos ? sep : sep - start));
      if (sep == std::string_view::npos) break;
      start = sep + 3;
    }
    const std::string where = std::string(source) + ": line " + std::to_string(line_no);
    if (fields.size() != 3) {
      throw Error(ErrorCode::kFormat, where + ": expected 3 ':::'-separated fields, got " +
                                          std::to_string(fields.size()));
    }
    if (fields[0].empty()) throw Error(ErrorCode::kFormat, where + ": empty author id");
    Gender gender;
    try {
      gender = parse_gender(fields[1]);
    } catch (const Error &) {
      throw Error(ErrorCode::kValue, where + ": unknown gender '" + std::string(fields[1]) + "'");
    }
    labels.push_back({std::string(fields[0]), gender, std::string(fields[2])});
  }
  return labels;
}

std::vector<TruthLabel> parse_truth_file(const fs::path &path) {
  return parse_truth_text(read_file(path), path.string());
}

std::string format_truth_line(const TruthLabel &label) {
  return label.author_id + ":::" + std::string(gender_name(label.gender)) + ":::" +
         label.variety;
}

Corpus load_corpus(const fs::path &dir, const std::optional<fs::path> &truth) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::kIo, dir.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto &entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".xml") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<AuthorRecord> authors;
  authors.reserve(files.size());
  for (const auto &file : files) authors.push_back(parse_author_xml(file));
  if (authors.empty()) {
    throw Error(ErrorCode::kConsistency, dir.string() + " contains no author XML files");
  }
  std::vector<TruthLabel> labels;
  if (truth) labels = parse_truth_file(*truth);
  return Corpus::create(std::move(authors), std::move(labels));
}

void write_corpus(const Corpus &corpus, const fs::path &dir) {
  fs::create_directories(dir);
  for (const auto &author : corpus.authors()) {
    std::ofstream out(dir / (author.author_id() + ".xml"), std::ios::binary);
    if (!out) throw Error(ErrorCode::kIo, "cannot write into " + dir.string());
    out << format_author_xml(author);
  }
  if (corpus.labels().empty()) return;
  std::ofstream out(dir / std::string(kTruthFileName), std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write truth file into " + dir.string());
  for (const auto &author : corpus.authors()) {
    auto it = corpus.labels().find(author.author_id());
    if (it != corpus.labels().end()) out << format_truth_line(it->second) << '\n';
  }
}

}  // namespace authorprof
