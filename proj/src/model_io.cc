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

#include "authorprof/model_io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "authorprof/errors.h"

namespace authorprof {
namespace {

constexpr std::string_view kMagic = "authorprof-model 1";

[[noreturn]] void fail(std::size_t line_no, const std::string &what) {
  throw Error(ErrorCode::kFormat, "model file line " + std::to_string(line_no) + ": " + what);
}

class LineReader {
 public:
  explicit LineReader(std::istream &in) : in_(in) {}

  std::string next() {
    std::string line;
    if (!std::getline(in_, line)) fail(line_no_ + 1, "unexpected end of file");
    ++line_no_;
    return line;
  }

  // Reads `key value` and returns value.
  std::string field(std::string_view key) {
    std::string line = next();
    const std::string prefix = std::string(key) + " ";
    if (line.rfind(prefix, 0) != 0) fail(line_no_, "expected '" + std::string(key) + "'");
    return line.substr(prefix.size());
  }

  std::uint64_t count(std::string_view key) { return to_uint(field(key)); }

  std::uint64_t to_uint(std::string_view text) const {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      fail(line_no_, "bad integer '" + std::string(text) + "'");
    }
    return value;
  }

  double to_double(std::string_view text) const {
    try {
      return parse_hex_double(text);
    } catch (const Error &) {
      fail(line_no_, "bad real '" + std::string(text) + "'");
    }
  }

  void expect(std::string_view exact) {
    if (next() != exact) fail(line_no_, "expected '" + std::string(exact) + "'");
  }

  std::size_t line_no() const { return line_no_; }
  void advance(std::size_t lines) { line_no_ += lines; }

 private:
  std::istream &in_;
  std::size_t line_no_ = 0;
};

void write_gamma(std::ostream &out, const Gamma &gamma) {
  if (gamma.is_auto()) out << "auto";
  else out << format_hex_double(gamma.value());
}

void write_multiclass(std::ostream &out, Task task, const MulticlassSvmModel &model) {
  out << "task " << task_name(task) << '\n';
  out << "classes " << model.classes.size() << '\n';
  for (const auto &cls : model.classes) out << cls << '\n';
  out << "machines " << model.machines.size() << '\n';
  for (const auto &m : model.machines) {
    out << "gamma " << format_hex_double(m.gamma) << '\n';
    out << "c " << format_hex_double(m.c) << '\n';
    out << "bias " << format_hex_double(m.bias) << '\n';
    out << "diagnostics " << (m.diagnostics.converged ? 1 : 0) << ' ' << m.diagnostics.iterations
        << ' ' << format_hex_double(m.diagnostics.max_violation) << ' '
        << format_hex_double(m.diagnostics.dual_objective) << '\n';
    out << "support_vectors " << m.support_vectors.size() << '\n';
    for (std::size_t i = 0; i < m.support_vectors.size(); ++i) {
      out << format_hex_double(m.dual_coefs[i]);
      for (const auto &e : m.support_vectors[i].entries()) out << ' ' << e.column << ':' << e.count;
      out << '\n';
    }
  }
  out << "end task\n";
}

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    std::size_t end = line.find(' ', pos);
    if (end == std::string_view::npos) end = line.size();
    parts.push_back(line.substr(pos, end - pos));
    if (end == line.size()) break;
    pos = end + 1;
  }
  return parts;
}

MulticlassSvmModel read_multiclass(LineReader &reader, Task task, std::size_t dim) {
  if (reader.field("task") != task_name(task)) {
    fail(reader.line_no(), "expected task '" + std::string(task_name(task)) + "'");
  }
  MulticlassSvmModel model;
  const auto n_classes = reader.count("classes");
  for (std::uint64_t i = 0; i < n_classes; ++i) model.classes.push_back(reader.next());
  if (n_classes < 2) fail(reader.line_no(), "a task model needs at least two classes");
  const auto n_machines = reader.count("machines");
  if (n_machines != n_classes * (n_classes - 1) / 2) {
    fail(reader.line_no(), "machine count does not match class count");
  }
  for (std::size_t a = 0; a < n_classes; ++a) {
    for (std::size_t b = a + 1; b < n_classes; ++b) {
      BinarySvmModel m;
      m.label_pair = {model.classes[a], model.classes[b]};
      m.gamma = reader.to_double(reader.field("gamma"));
      m.c = reader.to_double(reader.field("c"));
      m.bias = reader.to_double(reader.field("bias"));
      const std::string diag_line = reader.field("diagnostics");
      const auto diag = split_spaces(diag_line);
      if (diag.size() != 4) fail(reader.line_no(), "diagnostics needs 4 fields");
      m.diagnostics.converged = reader.to_uint(diag[0]) != 0;
      m.diagnostics.iterations = reader.to_uint(diag[1]);
      m.diagnostics.max_violation = reader.to_double(diag[2]);
      m.diagnostics.dual_objective = reader.to_double(diag[3]);
      const auto n_sv = reader.count("support_vectors");
      if (n_sv == 0) fail(reader.line_no(), "a machine needs at least one support vector");
      for (std::uint64_t s = 0; s < n_sv; ++s) {
        const std::string line = reader.next();
        const auto parts = split_spaces(line);
        m.dual_coefs.push_back(reader.to_double(parts[0]));
        std::vector<SparseEntry> entries;
        for (std::size_t p = 1; p < parts.size(); ++p) {
          const auto colon = parts[p].find(':');
          if (colon == std::string_view::npos) fail(reader.line_no(), "expected col:count");
          entries.push_back(
              {static_cast<std::uint32_t>(reader.to_uint(parts[p].substr(0, colon))),
               static_cast<std::uint32_t>(reader.to_uint(parts[p].substr(colon + 1)))});
        }
        try {
          m.support_vectors.emplace_back(dim, std::move(entries));
        } catch (const Error &e) {
          throw Error(ErrorCode::kModelIncompatible,
                      "support vector does not fit the vocabulary: " + e.detail());
        }
      }
      model.machines.push_back(std::move(m));
    }
  }
  reader.expect("end task");
  return model;
}

}  // namespace

const LanguageModel &ModelBundle::find(Language language) const {
  for (const auto &lm : languages) {
    if (lm.language == language) return lm;
  }
  throw Error(ErrorCode::kModelIncompatible,
              "model has no '" + std::string(language_code(language)) + "' section");
}

std::string format_hex_double(double value) {
  char buf[64];
  char *p = buf;
  if (std::signbit(value)) {
    *p++ = '-';
    value = -value;
  }
  *p++ = '0';
  *p++ = 'x';
  auto [end, ec] = std::to_chars(p, buf + sizeof(buf), value, std::chars_format::hex);
  if (ec != std::errc()) throw Error(ErrorCode::kValue, "cannot format real");
  return std::string(buf, end);
}

double parse_hex_double(std::string_view text) {
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  if (text.substr(0, 2) != "0x") {
    throw Error(ErrorCode::kFormat, "expected hexadecimal real, got '" + std::string(text) + "'");
  }
  text.remove_prefix(2);
  double value = 0.0;
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value, std::chars_format::hex);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw Error(ErrorCode::kFormat, "bad hexadecimal real '" + std::string(text) + "'");
  }
  return negative ? -value : value;
}

void write_model(std::ostream &out, const ModelBundle &bundle) {
  out << kMagic << '\n';
  out << "config min_df " << bundle.config.min_df << " c " << format_hex_double(bundle.config.c)
      << " gamma ";
  write_gamma(out, bundle.config.gamma);
  out << " folds " << bundle.config.folds << " seed " << bundle.config.seed << '\n';
  out << "languages " << bundle.languages.size() << '\n';
  for (const auto &lm : bundle.languages) {
    out << "language " << language_code(lm.language) << '\n';
    write_vocabulary(out, lm.vocab);
    write_multiclass(out, Task::kGender, lm.gender);
    write_multiclass(out, Task::kVariety, lm.variety);
    out << "end language\n";
  }
}

ModelBundle read_model(std::istream &in) {
  LineReader reader(in);
  if (reader.next() != kMagic) fail(1, "not an authorprof model (expected '" + std::string(kMagic) + "')");
  ModelBundle bundle;
  {
    const std::string config_line = reader.field("config");
    const auto parts = split_spaces(config_line);
    if (parts.size() != 10 || parts[0] != "min_df" || parts[2] != "c" || parts[4] != "gamma" ||
        parts[6] != "folds" || parts[8] != "seed") {
      fail(reader.line_no(), "malformed config line");
    }
    bundle.config.min_df = static_cast<std::uint32_t>(reader.to_uint(parts[1]));
    bundle.config.c = reader.to_double(parts[3]);
    bundle.config.gamma =
        parts[5] == "auto" ? Gamma::automatic() : Gamma::fixed(reader.to_double(parts[5]));
    bundle.config.folds = static_cast<std::uint32_t>(reader.to_uint(parts[7]));
    bundle.config.seed = reader.to_uint(parts[9]);
  }
  const auto n_languages = reader.count("languages");
  for (std::uint64_t l = 0; l < n_languages; ++l) {
    LanguageModel lm;
    lm.language = parse_language(reader.field("language"));
    lm.vocab = read_vocabulary(in);
    reader.advance(3 + lm.vocab.size());
    if (lm.vocab.empty()) fail(reader.line_no(), "empty vocabulary");
    lm.gender = read_multiclass(reader, Task::kGender, lm.vocab.size());
    lm.variety = read_multiclass(reader, Task::kVariety, lm.vocab.size());
    reader.expect("end language");
    bundle.languages.push_back(std::move(lm));
  }
  return bundle;
}

void save_model(const std::filesystem::path &path, const ModelBundle &bundle) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write model " + path.string());
  write_model(out, bundle);
  if (!out) throw Error(ErrorCode::kIo, "failed writing model " + path.string());
}

ModelBundle load_model(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open model " + path.string());
  return read_model(in);
}

}  // namespace authorprof
