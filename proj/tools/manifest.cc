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

#include "manifest.h"

#include <openssl/evp.h>
#include <sys/stat.h>

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <memory>

#include "mmr/error.h"

namespace mmr::cli {

#ifndef MMR_VERSION
#define MMR_VERSION "0.0.0"
#endif
const char* const kToolVersion = MMR_VERSION;

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, 0, "", "cannot read file for digest");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(
      EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw InvariantViolation("sha256 init failed");
  }
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    if (in.gcount() > 0) {
      EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
    }
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md, &len);
  std::string hex;
  char two[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(two, sizeof two, "%02x", md[i]);
    hex += two;
  }
  return hex;
}

std::string format_utc(long long seconds) {
  const std::time_t t = static_cast<std::time_t>(seconds);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string resolve_timestamp(const std::optional<std::string>& explicit_value,
                              const std::vector<InputFile>& inputs) {
  if (explicit_value) return *explicit_value;
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH"); env && *env) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (*end == '\0') return format_utc(v);
  }
  long long newest = 0;
  for (const InputFile& f : inputs) {
    struct stat st {};
    if (::stat(f.path.c_str(), &st) == 0) {
      newest = std::max<long long>(newest, st.st_mtime);
    }
  }
  return format_utc(newest);
}

nlohmann::ordered_json to_json(const RunManifest& m) {
  nlohmann::ordered_json inputs = nlohmann::ordered_json::array();
  for (const InputFile& f : m.inputs) {
    inputs.push_back(
        {{"role", f.role}, {"path", f.path}, {"sha256", sha256_file(f.path)}});
  }
  nlohmann::ordered_json j;
  j["tool"] = "mmr";
  j["version"] = kToolVersion;
  j["command"] = m.command;
  j["inputs"] = std::move(inputs);
  j["config"] = m.config;
  j["timestamp"] = m.timestamp;
  return j;
}

}  // namespace mmr::cli
