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

// Structured (JSON) form of every report the tools produce. Key order is
// fixed so serialized documents are byte-stable.

#ifndef MMR_REPORT_H_
#define MMR_REPORT_H_

#include <cstdint>

#include <json.hpp>

#include "mmr/dataset.h"
#include "mmr/metrics.h"
#include "mmr/postprocess.h"
#include "mmr/qc.h"
#include "mmr/stats.h"
#include "mmr/synth.h"
#include "mmr/targets.h"

namespace mmr {

nlohmann::ordered_json to_json(const MetricConfig& config);
nlohmann::ordered_json to_json(const MetricReport& report);
nlohmann::ordered_json to_json(const PostProcessConfig& config);
nlohmann::ordered_json to_json(const StatsOptions& options);
nlohmann::ordered_json to_json(const DatasetStats& stats);
nlohmann::ordered_json to_json(const QcReport& report);
nlohmann::ordered_json to_json(const ValidationReport& report);
nlohmann::ordered_json to_json(const SynthConfig& config);
nlohmann::ordered_json to_json(std::int64_t qid,
                               const SupervisionTargets& targets);

// Builds a config from a mapping with any of the keys "iou_thresholds",
// "recall_thresholds", "k_values", "ap_mode"; absent keys keep defaults.
// Throws InvalidArgument on unknown keys or bad values.
MetricConfig metric_config_from_json(const nlohmann::json& mapping);

}  // namespace mmr

#endif  // MMR_REPORT_H_
