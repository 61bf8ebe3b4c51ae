// Copyright 2026 The citedyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "citedyn/error.hpp"

namespace citedyn {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUsage: return "usage error";
    case ErrorKind::kIo: return "i/o error";
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kValidation: return "validation error";
    case ErrorKind::kEmptyDomain: return "empty-domain error";
    case ErrorKind::kEmptyYear: return "empty-year error";
    case ErrorKind::kRange: return "range error";
    case ErrorKind::kSchema: return "schema error";
    case ErrorKind::kHttp: return "http error";
    case ErrorKind::kDomain: return "domain error";
    case ErrorKind::kUndefinedGini: return "undefined-gini error";
    case ErrorKind::kUndefinedRatio: return "undefined-ratio error";
    case ErrorKind::kFitRange: return "fit-range error";
    case ErrorKind::kDegenerateRegressor: return "degenerate-regressor error";
    case ErrorKind::kNonConvergence: return "non-convergence error";
    case ErrorKind::kSweep: return "sweep error";
  }
  return "error";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUsage:
      return 2;
    case ErrorKind::kIo:
    case ErrorKind::kParse:
    case ErrorKind::kValidation:
    case ErrorKind::kEmptyDomain:
    case ErrorKind::kEmptyYear:
    case ErrorKind::kRange:
    case ErrorKind::kSchema:
    case ErrorKind::kHttp:
      return 3;
    case ErrorKind::kDomain:
    case ErrorKind::kUndefinedGini:
    case ErrorKind::kUndefinedRatio:
    case ErrorKind::kFitRange:
    case ErrorKind::kDegenerateRegressor:
    case ErrorKind::kNonConvergence:
    case ErrorKind::kSweep:
      return 4;
  }
  return 1;
}

}  // namespace citedyn
