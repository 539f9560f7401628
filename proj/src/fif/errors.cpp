// Copyright 2026 The fif Authors
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

#include "fif/errors.hpp"

namespace fif {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Ok: return "Ok";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SingularMap: return "SingularMap";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NotContractive: return "NotContractive";
    case ErrorCode::NotCovering: return "NotCovering";
    case ErrorCode::NotAFunctionGraph: return "NotAFunctionGraph";
    case ErrorCode::DepthTooLarge: return "DepthTooLarge";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::ResolutionInsufficient: return "ResolutionInsufficient";
    case ErrorCode::FixedPointInside: return "FixedPointInside";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::NonpositiveRatio: return "NonpositiveRatio";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace fif
