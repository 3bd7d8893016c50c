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

#ifndef RECOVERY_ERROR_H_
#define RECOVERY_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace recovery {

enum class ErrorCode {
  // Community construction.
  kCycleInDependencies,
  kDanglingFeedReference,
  kCrossNetworkViolation,
  kNonPositiveRepairTime,
  kDuplicateId,
  kInvalidValue,
  // Gravity model.
  kZeroDistance,
  kNoRetailers,
  // Hazard.
  kNonPositiveIm,
  kNonMonotoneFragility,
  kMissingFragility,
  // MDP.
  kTerminalState,
  kInadmissibleAction,
  kZeroElapsedTime,
  kZeroPopulation,
  // Planner.
  kInstanceTooLarge,
  kNonDeterministicModel,
  // Scenario files and emitted output.
  kParseError,
  kIoError,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map it to an exit status.
class RecoveryError : public std::runtime_error {
 public:
  RecoveryError(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace recovery

#endif  // RECOVERY_ERROR_H_
