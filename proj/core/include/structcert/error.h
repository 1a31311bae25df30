// Copyright 2026 The Structcert Authors
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

#ifndef STRUCTCERT_ERROR_H_
#define STRUCTCERT_ERROR_H_

#include <stdexcept>
#include <string>

namespace structcert {

enum class ErrorKind {
  kInvalidInput,
  kResourceLimit,
  kInfeasible,
  kGeneration,
  kIo,
};

// All library failures are reported through this exception type; `kind()`
// lets callers (the CLI in particular) map failures onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void ThrowInvalid(const std::string& message) {
  throw Error(ErrorKind::kInvalidInput, message);
}

[[noreturn]] inline void ThrowResourceLimit(const std::string& message) {
  throw Error(ErrorKind::kResourceLimit, message);
}

}  // namespace structcert

#endif  // STRUCTCERT_ERROR_H_
