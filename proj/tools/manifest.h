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

// Provenance block embedded in every report: tool version, input digests,
// resolved configuration and a reproducible timestamp.

#ifndef MMR_TOOLS_MANIFEST_H_
#define MMR_TOOLS_MANIFEST_H_

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace mmr::cli {

struct InputFile {
  std::string role;  // "ground_truth", "predictions", ...
  std::string path;
};

struct RunManifest {
  std::string command;
  std::vector<InputFile> inputs;
  nlohmann::ordered_json config;
  std::string timestamp;
};

// Lowercase hex SHA-256 of a file's bytes. Throws InputError if unreadable.
std::string sha256_file(const std::string& path);

// Explicit value if given, else $SOURCE_DATE_EPOCH, else the newest input
// modification time; with no inputs, the Unix epoch. Always UTC ISO-8601,
// so reruns on unchanged inputs give identical reports.
std::string resolve_timestamp(const std::optional<std::string>& explicit_value,
                              const std::vector<InputFile>& inputs);

std::string format_utc(long long seconds_since_epoch);

nlohmann::ordered_json to_json(const RunManifest& manifest);

extern const char* const kToolVersion;

}  // namespace mmr::cli

#endif  // MMR_TOOLS_MANIFEST_H_
