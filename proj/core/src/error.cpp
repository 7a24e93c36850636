// Copyright 2026 The Smock Authors
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

#include "smock/error.hpp"

namespace smock {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kEmptyOperand: return "EmptyOperand";
    case ErrorCode::kOverlappingStitches: return "OverlappingStitches";
    case ErrorCode::kZeroSeparation: return "ZeroSeparation";
    case ErrorCode::kDisconnectedStitch: return "DisconnectedStitch";
    case ErrorCode::kStitchOutsideWindow: return "StitchOutsideWindow";
    case ErrorCode::kEmptyPattern: return "EmptyPattern";
    case ErrorCode::kLiftOutsideWindow: return "LiftOutsideWindow";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kInvalidCorrespondence: return "InvalidCorrespondence";
    case ErrorCode::kNoRepresentation: return "NoRepresentation";
    case ErrorCode::kSearchBoxTooSmall: return "SearchBoxTooSmall";
    case ErrorCode::kMethodMismatch: return "MethodMismatch";
    case ErrorCode::kSupportOutsideWindow: return "SupportOutsideWindow";
  }
  return "Unknown";
}

}  // namespace smock
