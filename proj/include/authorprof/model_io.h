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

#ifndef AUTHORPROF_MODEL_IO_H_
#define AUTHORPROF_MODEL_IO_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "authorprof/corpus.h"
#include "authorprof/svm.h"
#include "authorprof/vectorizer.h"

namespace authorprof {

// Training settings echoed into the model file.
struct ModelConfig {
  std::uint32_t min_df = 10;
  double c = 1.0;
  Gamma gamma = Gamma::automatic();
  std::uint32_t folds = 10;
  std::uint64_t seed = 0;
};

// Both task models for one language, sharing one vocabulary.
struct LanguageModel {
  Language language = Language::kEn;
  Vocabulary vocab;
  MulticlassSvmModel gender;
  MulticlassSvmModel variety;

  const MulticlassSvmModel &for_task(Task task) const {
    return task == Task::kGender ? gender : variety;
  }
};

struct ModelBundle {
  ModelConfig config;
  std::vector<LanguageModel> languages;

  // Throws Error(kModelIncompatible) if the language is absent.
  const LanguageModel &find(Language language) const;
};

// Line-oriented text format, version 1. Reals are written as hexadecimal
// floating point, so save -> load -> save is byte-identical.
void write_model(std::ostream &out, const ModelBundle &bundle);
ModelBundle read_model(std::istream &in);

void save_model(const std::filesystem::path &path, const ModelBundle &bundle);
ModelBundle load_model(const std::filesystem::path &path);

// Exact text form of a double ("0x1.8p+1"), and its inverse.
std::string format_hex_double(double value);
double parse_hex_double(std::string_view text);

}  // namespace authorprof

#endif  // AUTHORPROF_MODEL_IO_H_
