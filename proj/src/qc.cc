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

#include "mmr/qc.h"

#include <map>
#include <string>

#include "mmr/error.h"

namespace mmr {
namespace {

std::map<std::int64_t, const GroundTruthEntry*> by_qid(
    std::span<const GroundTruthEntry> side, const char* name) {
  std::map<std::int64_t, const GroundTruthEntry*> out;
  for (const GroundTruthEntry& e : side) {
    if (!out.emplace(e.qid, &e).second) {
      throw InvalidArgument(std::string("duplicate qid ") +
                            std::to_string(e.qid) + " in annotation " + name);
    }
  }
  return out;
}

}  // namespace

QcReport qc_compare(std::span<const GroundTruthEntry> a,
                    std::span<const GroundTruthEntry> b, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw InvalidArgument("qc threshold must lie in [0, 1]");
  }
  const auto ma = by_qid(a, "a");
  const auto mb = by_qid(b, "b");
  QcReport r;
  r.threshold = threshold;
  for (const auto& [qid, ea] : ma) {
    const auto it = mb.find(qid);
    if (it == mb.end()) {
      r.missing_in_b.push_back(qid);
      continue;
    }
    QcEntry q;
    q.qid = qid;
    q.overlap = set_iou(ea->moments, it->second->moments);
    q.flagged = q.overlap < threshold;
    if (q.flagged) r.flagged.push_back(qid);
    r.entries.push_back(q);
  }
  for (const auto& [qid, eb] : mb) {
    if (!ma.count(qid)) r.missing_in_a.push_back(qid);
  }
  if (!r.entries.empty()) {
    r.pass_rate = static_cast<double>(r.entries.size() - r.flagged.size()) /
                  static_cast<double>(r.entries.size());
  }
  return r;
}

}  // namespace mmr
