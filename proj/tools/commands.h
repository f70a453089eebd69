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

// Subcommand implementations. Each takes resolved options, reads its
// inputs, and returns the structured document it would write; run_cli()
// wires them to the command line.

#ifndef MMR_TOOLS_COMMANDS_H_
#define MMR_TOOLS_COMMANDS_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mmr/metrics.h"
#include "mmr/postprocess.h"
#include "mmr/stats.h"
#include "mmr/synth.h"

namespace mmr::cli {

using Document = nlohmann::ordered_json;

struct EvaluateRequest {
  std::string gt_path;
  std::string pred_path;
  MetricConfig config;
  int threads = 1;
  std::optional<std::string> timestamp;
};

struct EvaluateResult {
  MetricReport report;
  Document document;  // {"manifest", "report"}
};

EvaluateResult cmd_evaluate(const EvaluateRequest& request);

// Summary table: values x100 with two decimals, "-" when undefined.
std::string format_metric_table(const MetricReport& report);

struct StatsRequest {
  std::string gt_path;
  StatsOptions options;
  std::optional<std::string> stop_words_path;
  std::optional<std::string> lemma_path;
  std::optional<std::string> timestamp;
};

struct StatsResult {
  DatasetStats stats;
  Document document;  // {"manifest", "stats"}
};

StatsResult cmd_stats(const StatsRequest& request);
std::string format_stats_table(const DatasetStats& stats);

struct ValidateRequest {
  std::string path;
  std::string kind = "gt";
  std::optional<std::string> timestamp;
};

// {"manifest", "validation"}; validation.ok tells whether issues exist.
Document cmd_validate(const ValidateRequest& request);

struct QcRequest {
  std::string a_path;
  std::string b_path;
  double threshold = 0.9;
  std::optional<std::string> timestamp;
};

Document cmd_qc(const QcRequest& request);  // {"manifest", "qc"}

// Output of the record-rewriting commands: one JSON object per query in
// input order, plus a manifest document describing the run.
struct RecordOutput {
  std::vector<nlohmann::json> records;
  Document manifest_document;  // {"manifest", "summary"}
};

struct NmsRequest {
  std::string pred_path;
  double iou = 0.7;
  std::optional<std::string> timestamp;
};

// Throws InvariantViolation if a survivor pair or a removed window breaks
// the suppression contract.
RecordOutput cmd_nms(const NmsRequest& request);

struct PostprocessRequest {
  std::string pred_path;
  std::optional<std::string> gt_path;      // durations by qid
  std::optional<double> duration;          // fallback for every query
  double clip_rate = 0.5;
  std::optional<double> granularity;       // default 1 / clip_rate
  std::optional<double> min_len;           // default 1 / clip_rate
  std::optional<double> max_len;           // default: video duration
  std::optional<std::string> verification_path;  // {"qid", "scores"}
  double blend_weight = 0.5;
  std::optional<std::string> timestamp;
};

// Duration per query: from the GT file, else --duration, else the record's
// own "duration" field.
RecordOutput cmd_postprocess(const PostprocessRequest& request);

struct TargetsRequest {
  std::string pred_path;
  std::string gt_path;
  double clip_rate = 0.5;
  bool refine = false;  // post-process windows first, defaults as above
  std::optional<double> granularity;
  std::optional<double> min_len;
  std::optional<double> max_len;
  std::optional<std::string> timestamp;
};

// {"manifest", "clip_rate", "queries": [{qid, windows, max_tiou, ...}]}
Document cmd_targets(const TargetsRequest& request);

struct SynthRequest {
  SynthConfig config;
  std::string gt_out;
  std::string pred_out;
  std::optional<std::string> timestamp;
};

// Writes both fixture files and returns {"manifest", "outputs"}.
Document cmd_synth(const SynthRequest& request);

// Full command line (args[0] is the program name). Human output goes to
// `out`, diagnostics to `err`. Returns the process exit status: 0 success,
// 1 input or usage error, 2 internal invariant violation.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace mmr::cli

#endif  // MMR_TOOLS_COMMANDS_H_
