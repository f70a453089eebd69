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

// Line-delimited JSON records for annotations and predictions.
//
// Ground truth:  {"qid": 1, "query": "...", "vid": "abc", "duration": 150,
//                 "relevant_windows": [[0, 10], [26, 40]]}
// Predictions:   {"qid": 1, "pred_relevant_windows": [[0, 10, 0.9], ...]}
//
// Unknown fields are ignored on load. Blank lines are skipped; line numbers
// in errors count them.

#ifndef MMR_DATASET_H_
#define MMR_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "mmr/postprocess.h"
#include "mmr/records.h"

namespace mmr {

// One parsed line of a JSONL file.
struct JsonRecord {
  std::size_t line = 0;
  nlohmann::json value;
};

// Reads every non-blank line. Throws InputError on malformed JSON or a line
// that is not an object.
std::vector<JsonRecord> read_jsonl(std::istream& in, const std::string& source);
// Throws InputError("cannot read <what>") when the file cannot be opened.
std::vector<JsonRecord> read_jsonl_file(const std::string& path,
                                        const std::string& what);

// Single-record conversion. Errors are InputError(source, line, field, ...).
GroundTruthEntry ground_truth_from_json(const nlohmann::json& record,
                                        const std::string& source,
                                        std::size_t line);
PredictionEntry prediction_from_json(const nlohmann::json& record,
                                     const std::string& source,
                                     std::size_t line);

// Whole-file conversion; adds the duplicate-qid check.
std::vector<GroundTruthEntry> ground_truth_from_records(
    std::span<const JsonRecord> records, const std::string& source);
std::vector<PredictionEntry> predictions_from_records(
    std::span<const JsonRecord> records, const std::string& source);

std::vector<GroundTruthEntry> load_ground_truth(const std::string& path);
std::vector<PredictionEntry> load_predictions(const std::string& path);

// Prediction windows before validation, for post-processing. The original
// record is kept so other fields pass through unchanged.
struct RawPredictionRecord {
  std::int64_t qid = 0;
  std::vector<RawWindow> windows;
  JsonRecord source;
};

std::vector<RawPredictionRecord> raw_predictions_from_records(
    std::span<const JsonRecord> records, const std::string& source);

nlohmann::ordered_json to_json(const GroundTruthEntry& entry);
nlohmann::ordered_json to_json(const PredictionEntry& entry);
nlohmann::ordered_json windows_to_json(std::span<const ScoredInterval> windows);

// One compact JSON object per line.
void write_jsonl(std::ostream& out, std::span<const GroundTruthEntry> entries);
void write_jsonl(std::ostream& out, std::span<const PredictionEntry> entries);

enum class RecordKind { kGroundTruth, kPredictions };
std::string_view to_string(RecordKind kind);
// Accepts "gt" and "pred".
RecordKind parse_record_kind(std::string_view name);

struct ValidationIssue {
  std::size_t line = 0;
  std::string field;
  std::string message;
  friend bool operator==(const ValidationIssue&,
                         const ValidationIssue&) = default;
};

struct ValidationReport {
  RecordKind kind = RecordKind::kGroundTruth;
  std::size_t num_records = 0;   // non-blank lines
  std::size_t num_valid = 0;
  std::vector<ValidationIssue> issues;  // by line

  bool ok() const { return issues.empty(); }
};

// Checks every line instead of stopping at the first problem. A record
// repeating an earlier qid is reported once, at the repeat.
ValidationReport validate_jsonl(std::istream& in, RecordKind kind);

}  // namespace mmr

#endif  // MMR_DATASET_H_
