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

#include "mmr/error.h"

#include <utility>

namespace mmr {
namespace {

std::string format_input_error(const std::string& source, std::size_t line,
                               const std::string& field,
                               const std::string& message) {
  std::string out = source;
  if (line > 0) out += ":" + std::to_string(line);
  out += ": ";
  if (!field.empty()) out += field + ": ";
  out += message;
  return out;
}

}  // namespace

InputError::InputError(std::string source, std::size_t line, std::string field,
                       std::string message)
    : std::runtime_error(format_input_error(source, line, field, message)),
      source_(std::move(source)),
      line_(line),
      field_(std::move(field)),
      message_(std::move(message)) {}

}  // namespace mmr
