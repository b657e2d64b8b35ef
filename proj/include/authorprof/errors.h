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

#ifndef AUTHORPROF_ERRORS_H_
#define AUTHORPROF_ERRORS_H_

#include <stdexcept>
#include <string>

namespace authorprof {

// Failure categories. Each maps onto one of the CLI exit codes.
enum class ErrorCode {
  kUsage,
  kIo,
  kParse,
  kSchema,
  kFormat,
  kValue,
  kConsistency,
  kParameter,
  kEmptyVocabulary,
  kShape,
  kStratification,
  kUndefinedMetric,
  kModelIncompatible,
  kDegenerateTraining,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message);

  ErrorCode code() const { return code_; }
  // The message without the category prefix.
  const std::string &detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

const char *error_code_name(ErrorCode code);

// 1 usage, 2 data, 3 numeric.
int exit_code_for(ErrorCode code);

}  // namespace authorprof

#endif  // AUTHORPROF_ERRORS_H_
