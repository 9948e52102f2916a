// Copyright 2026 The FaaS Authors
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

#ifndef FAAS_ERRORS_HPP_
#define FAAS_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <utility>

namespace faas {

// Broad failure class. Each maps onto one CLI exit code.
enum class ErrorCategory {
  kVerification,  // exit 2
  kInput,         // exit 3
  kIo,            // exit 4
};

// All library failures are reported through this exception. `kind()` is a
// short machine-readable tag such as "size-mismatch" or "chain-invalid".
class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, std::string kind, const std::string& message)
      : std::runtime_error(kind + ": " + message),
        category_(category),
        kind_(std::move(kind)),
        message_(message) {}

  ErrorCategory category() const noexcept { return category_; }
  const std::string& kind() const noexcept { return kind_; }
  const std::string& message() const noexcept { return message_; }

  int exit_code() const noexcept {
    switch (category_) {
      case ErrorCategory::kVerification:
        return 2;
      case ErrorCategory::kInput:
        return 3;
      case ErrorCategory::kIo:
        return 4;
    }
    return 1;
  }

 private:
  ErrorCategory category_;
  std::string kind_;
  std::string message_;
};

inline Error InputError(std::string kind, const std::string& message) {
  return Error(ErrorCategory::kInput, std::move(kind), message);
}

inline Error VerificationError(std::string kind, const std::string& message) {
  return Error(ErrorCategory::kVerification, std::move(kind), message);
}

inline Error IoError(std::string kind, const std::string& message) {
  return Error(ErrorCategory::kIo, std::move(kind), message);
}

}  // namespace faas

#endif  // FAAS_ERRORS_HPP_
