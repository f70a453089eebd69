// Copyright 2026 The MMR Eval Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MMR_ERROR_H_
#define MMR_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mmr {

// Bad caller-supplied value: malformed interval, inconsistent config,
// mismatched vector lengths. CLI maps these to exit status 1.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Problem with an input file. Carries the 1-based line number (0 when the
// problem is not tied to a line) and the offending field name.
class InputError : public std::runtime_error {
 public:
  InputError(std::string source, std::size_t line, std::string field,
             std::string message);

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }
  const std::string& message() const { return message_; }

 private:
  std::string source_;
  std::size_t line_;
  std::string field_;
  std::string message_;
};

// A result failed one of its own postconditions. CLI exit status 2.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mmr

#endif  // MMR_ERROR_H_
