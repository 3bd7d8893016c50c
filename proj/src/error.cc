// Copyright 2026 The Recovery Planner Authors
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

#include "recovery/error.h"

namespace recovery {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kCycleInDependencies:
      return "CycleInDependencies";
    case ErrorCode::kDanglingFeedReference:
      return "DanglingFeedReference";
    case ErrorCode::kCrossNetworkViolation:
      return "CrossNetworkViolation";
    case ErrorCode::kNonPositiveRepairTime:
      return "NonPositiveRepairTime";
    case ErrorCode::kDuplicateId:
      return "DuplicateId";
    case ErrorCode::kInvalidValue:
      return "InvalidValue";
    case ErrorCode::kZeroDistance:
      return "ZeroDistance";
    case ErrorCode::kNoRetailers:
      return "NoRetailers";
    case ErrorCode::kNonPositiveIm:
      return "NonPositiveIm";
    case ErrorCode::kNonMonotoneFragility:
      return "NonMonotoneFragility";
    case ErrorCode::kMissingFragility:
      return "MissingFragility";
    case ErrorCode::kTerminalState:
      return "TerminalState";
    case ErrorCode::kInadmissibleAction:
      return "InadmissibleAction";
    case ErrorCode::kZeroElapsedTime:
      return "ZeroElapsedTime";
    case ErrorCode::kZeroPopulation:
      return "ZeroPopulation";
    case ErrorCode::kInstanceTooLarge:
      return "InstanceTooLarge";
    case ErrorCode::kNonDeterministicModel:
      return "NonDeterministicModel";
    case ErrorCode::kParseError:
      return "ParseError";
    case ErrorCode::kIoError:
      return "IoError";
  }
  return "Unknown";
}

RecoveryError::RecoveryError(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace recovery
