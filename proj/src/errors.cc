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

#include "authorprof/errors.h"

namespace authorprof {

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code),
      detail_(message) {}

const char *error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUsage: return "usage error";
    case ErrorCode::kIo: return "io error";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kSchema: return "schema error";
    case ErrorCode::kFormat: return "format error";
    case ErrorCode::kValue: return "value error";
    case ErrorCode::kConsistency: return "consistency error";
    case ErrorCode::kParameter: return "parameter error";
    case ErrorCode::kEmptyVocabulary: return "empty vocabulary";
    case ErrorCode::kShape: return "shape error";
    case ErrorCode::kStratification: return "stratification error";
    case ErrorCode::kUndefinedMetric: return "undefined metric";
    case ErrorCode::kModelIncompatible: return "model incompatible";
    case ErrorCode::kDegenerateTraining: return "degenerate training";
  }
  return "error";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUsage:
    case ErrorCode::kParameter:
      return 1;
    case ErrorCode::kShape:
    case ErrorCode::kUndefinedMetric:
    case ErrorCode::kDegenerateTraining:
      return 3;
    default:
      return 2;
  }
}

}  // namespace authorprof
