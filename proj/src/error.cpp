// Copyright 2026 The expsum-lab Authors
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

#include "expsum/error.hpp"

namespace expsum {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::BadReduction: return "BadReduction";
    case ErrorCode::SmallCharacteristic: return "SmallCharacteristic";
    case ErrorCode::DegenerateDerivative: return "DegenerateDerivative";
    case ErrorCode::ExtensionTooLarge: return "ExtensionTooLarge";
    case ErrorCode::SmallPrime: return "SmallPrime";
    case ErrorCode::BadCharacteristic: return "BadCharacteristic";
    case ErrorCode::DuplicateValues: return "DuplicateValues";
    case ErrorCode::NoGoodPrime: return "NoGoodPrime";
    case ErrorCode::PrimeTooLarge: return "PrimeTooLarge";
    case ErrorCode::MissingTable: return "MissingTable";
    case ErrorCode::NonSquarefree: return "NonSquarefree";
    case ErrorCode::NotAMeasure: return "NotAMeasure";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::Io: return "Io";
    case ErrorCode::CacheCorrupt: return "CacheCorrupt";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace expsum
