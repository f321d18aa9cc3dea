/*
   Copyright 2026 The levylab Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "levylab/error.hpp"

namespace levylab {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kZeroMass: return "ZeroMass";
    case ErrorCode::kZeroCharge: return "ZeroCharge";
    case ErrorCode::kNotInGroup: return "NotInGroup";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kDivergentIntegral: return "DivergentIntegral";
    case ErrorCode::kTruncationOverflow: return "TruncationOverflow";
    case ErrorCode::kInsufficientTerms: return "InsufficientTerms";
    case ErrorCode::kQuadratureFailure: return "QuadratureFailure";
    case ErrorCode::kNormMismatch: return "NormMismatch";
    case ErrorCode::kEvaluationError: return "EvaluationError";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace levylab
