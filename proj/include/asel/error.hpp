// Copyright 2026 The Authors.
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

#ifndef ASEL_ERROR_HPP_
#define ASEL_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace asel {

enum class ErrorCode {
  kInvalidDimensions,
  kInconsistentMap,
  kNonPsdCovariance,
  kNumericOverflow,
  kEnumerationLimitExceeded,
  kInfeasibleFrame,
  kInvalidConfig,
  kIoError,
  kTooManyFailures,
};

const char* to_string(ErrorCode code);

// All recoverable failures in the library surface as this exception; the
// code lets callers (and the CLI exit status) distinguish them.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidDimensions: return "invalid-dimensions";
    case ErrorCode::kInconsistentMap: return "inconsistent-map";
    case ErrorCode::kNonPsdCovariance: return "non-psd-covariance";
    case ErrorCode::kNumericOverflow: return "numeric-overflow";
    case ErrorCode::kEnumerationLimitExceeded: return "enumeration-limit-exceeded";
    case ErrorCode::kInfeasibleFrame: return "infeasible-frame";
    case ErrorCode::kInvalidConfig: return "invalid-config";
    case ErrorCode::kIoError: return "io-error";
    case ErrorCode::kTooManyFailures: return "too-many-failures";
  }
  return "unknown";
}

}  // namespace asel

#endif  // ASEL_ERROR_HPP_
