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

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "mmr/dataset.h"
#include "mmr/error.h"

namespace mmr {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

// Calls fn(line_number, text) for every non-blank line.
template <typename Fn>
void for_each_line(std::istream& in, Fn&& fn) {
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (blank(text)) continue;
    fn(line, text);
  }
}

JsonRecord parse_line(const std::string& text, const std::string& source,
                      std::size_t line) {
  json value;
  try {
    value = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(source, line, "", std::string("invalid JSON: ") + e.what());
  }
  if (!value.is_object()) {
    throw InputError(source, line, "", "record is not a JSON object");
  }
  return {line, std::move(value)};
}

// Field lookup with structured errors.
class Fields {
 public:
  Fields(const json& record, const std::string& source, std::size_t line)
      : record_(record), source_(source), line_(line) {}

  const json& require(const char* name) const {
    const auto it = record_.find(name);
    if (it == record_.end()) fail(name, "missing field");
    return *it;
  }

  std::int64_t qid() const {
    const json& v = require("qid");
    if (v.is_number_unsigned()) {
      if (v.get<std::uint64_t>() >
          static_cast<std::uint64_t>(INT64_MAX)) {
        fail("qid", "qid out of range");
      }
      return static_cast<std::int64_t>(v.get<std::uint64_t>());
    }
    if (!v.is_number_integer()) fail("qid", "expected an integer");
    return v.get<std::int64_t>();
  }

  std::string text(const char* name) const {
    const json& v = require(name);
    if (!v.is_string()) fail(name, "expected a string");
    return v.get<std::string>();
  }

  double number(const json& v, const std::string& field) const {
    if (!v.is_number()) fail(field, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(field, "non-finite value");
    return d;
  }

  const json& array(const char* name) const {
    const json& v = require(name);
    if (!v.is_array()) fail(name, "expected a list");
    return v;
  }

  [[noreturn]] void fail(const std::string& field,
                         const std::string& message) const {
    throw InputError(source_, line_, field, message);
  }

 private:
  const json& record_;
  const std::string& source_;
  std::size_t line_;
};

std::string indexed(const char* name, std::size_t i) {
  return std::string(name) + "[" + std::to_string(i) + "]";
}

// [a, b] or [a, b, c] of numbers; score may be non-finite only to be
// reported as such.
struct Triple {
  double start = 0.0, end = 0.0, score = 0.0;
};

Triple window_values(const Fields& f, const json& w, const std::string& field,
                     std::size_t arity) {
  if (!w.is_array() || w.size() != arity) {
    f.fail(field, arity == 2 ? "expected [start, end]"
                             : "expected [start, end, score]");
  }
  Triple t;
  t.start = f.number(w[0], field);
  t.end = f.number(w[1], field);
  if (arity == 3) {
    if (!w[2].is_number()) f.fail(field, "expected a number");
    t.score = w[2].get<double>();
    if (!std::isfinite(t.score)) f.fail(field, "non-finite score");
  }
  return t;
}

template <typename Entry>
void check_unique(std::span<const Entry> entries,
                  std::span<const JsonRecord> records,
                  const std::string& source) {
  std::unordered_set<std::int64_t> seen;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!seen.insert(entries[i].qid).second) {
      throw InputError(source, records[i].line, "qid",
                       "duplicate qid " + std::to_string(entries[i].qid));
    }
  }
}

}  // namespace

std::vector<JsonRecord> read_jsonl(std::istream& in,
                                   const std::string& source) {
  std::vector<JsonRecord> out;
  for_each_line(in, [&](std::size_t line, const std::string& text) {
    out.push_back(parse_line(text, source, line));
  });
  if (in.bad()) throw InputError(source, 0, "", "read error");
  return out;
}

std::vector<JsonRecord> read_jsonl_file(const std::string& path,
                                        const std::string& what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, 0, "", "cannot read " + what);
  return read_jsonl(in, path);
}

GroundTruthEntry ground_truth_from_json(const json& record,
                                        const std::string& source,
                                        std::size_t line) {
  const Fields f(record, source, line);
  GroundTruthEntry e;
  e.qid = f.qid();
  e.query = f.text("query");
  e.vid = f.text("vid");
  e.duration = f.number(f.require("duration"), "duration");
  if (!(e.duration > 0.0)) f.fail("duration", "duration must be positive");
  const json& windows = f.array("relevant_windows");
  if (windows.empty()) f.fail("relevant_windows", "query has no moments");
  for (std::size_t i = 0; i < windows.size(); ++i) {
    const std::string field = indexed("relevant_windows", i);
    const Triple t = window_values(f, windows[i], field, 2);
    if (t.start < 0.0) f.fail(field, "moment starts before 0");
    if (t.start > t.end) f.fail(field, "moment start after end");
    if (t.end > e.duration) f.fail(field, "moment exceeds duration");
    e.moments.emplace_back(t.start, t.end);
  }
  return e;
}

PredictionEntry prediction_from_json(const json& record,
                                     const std::string& source,
                                     std::size_t line) {
  const Fields f(record, source, line);
  PredictionEntry e;
  e.qid = f.qid();
  const json& windows = f.array("pred_relevant_windows");
  std::vector<ScoredInterval> input;
  input.reserve(windows.size());
  for (std::size_t i = 0; i < windows.size(); ++i) {
    const std::string field = indexed("pred_relevant_windows", i);
    const Triple t = window_values(f, windows[i], field, 3);
    if (t.start < 0.0) f.fail(field, "window starts before 0");
    if (t.start > t.end) f.fail(field, "window start after end");
    input.emplace_back(t.start, t.end, t.score);
  }
  const std::vector<std::size_t> order = rank_order(input);
  e.windows.reserve(input.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] != i) e.reordered = true;
    e.windows.push_back(input[order[i]]);
  }
  return e;
}

std::vector<GroundTruthEntry> ground_truth_from_records(
    std::span<const JsonRecord> records, const std::string& source) {
  std::vector<GroundTruthEntry> out;
  out.reserve(records.size());
  for (const JsonRecord& r : records) {
    out.push_back(ground_truth_from_json(r.value, source, r.line));
  }
  check_unique<GroundTruthEntry>(out, records, source);
  return out;
}

std::vector<PredictionEntry> predictions_from_records(
    std::span<const JsonRecord> records, const std::string& source) {
  std::vector<PredictionEntry> out;
  out.reserve(records.size());
  for (const JsonRecord& r : records) {
    out.push_back(prediction_from_json(r.value, source, r.line));
  }
  check_unique<PredictionEntry>(out, records, source);
  return out;
}

std::vector<GroundTruthEntry> load_ground_truth(const std::string& path) {
  return ground_truth_from_records(read_jsonl_file(path, "ground truth"),
                                   path);
}

std::vector<PredictionEntry> load_predictions(const std::string& path) {
  return predictions_from_records(read_jsonl_file(path, "predictions"), path);
}

std::vector<RawPredictionRecord> raw_predictions_from_records(
    std::span<const JsonRecord> records, const std::string& source) {
  std::vector<RawPredictionRecord> out;
  std::unordered_set<std::int64_t> seen;
  for (const JsonRecord& r : records) {
    const Fields f(r.value, source, r.line);
    RawPredictionRecord raw;
    raw.qid = f.qid();
    if (!seen.insert(raw.qid).second) {
      f.fail("qid", "duplicate qid " + std::to_string(raw.qid));
    }
    const json& windows = f.array("pred_relevant_windows");
    for (std::size_t i = 0; i < windows.size(); ++i) {
      const Triple t = window_values(
          f, windows[i], indexed("pred_relevant_windows", i), 3);
      raw.windows.push_back({t.start, t.end, t.score});
    }
    raw.source = r;
    out.push_back(std::move(raw));
  }
  return out;
}

ordered_json to_json(const GroundTruthEntry& entry) {
  ordered_json windows = ordered_json::array();
  for (const Interval& m : entry.moments) {
    windows.push_back({m.start(), m.end()});
  }
  ordered_json j;
  j["qid"] = entry.qid;
  j["query"] = entry.query;
  j["vid"] = entry.vid;
  j["duration"] = entry.duration;
  j["relevant_windows"] = std::move(windows);
  return j;
}

ordered_json windows_to_json(std::span<const ScoredInterval> windows) {
  ordered_json out = ordered_json::array();
  for (const ScoredInterval& w : windows) {
    out.push_back({w.start(), w.end(), w.score()});
  }
  return out;
}

ordered_json to_json(const PredictionEntry& entry) {
  ordered_json j;
  j["qid"] = entry.qid;
  j["pred_relevant_windows"] = windows_to_json(entry.windows);
  return j;
}

void write_jsonl(std::ostream& out,
                 std::span<const GroundTruthEntry> entries) {
  for (const auto& e : entries) out << to_json(e).dump() << '\n';
}

void write_jsonl(std::ostream& out, std::span<const PredictionEntry> entries) {
  for (const auto& e : entries) out << to_json(e).dump() << '\n';
}

std::string_view to_string(RecordKind kind) {
  return kind == RecordKind::kGroundTruth ? "gt" : "pred";
}

RecordKind parse_record_kind(std::string_view name) {
  if (name == "gt") return RecordKind::kGroundTruth;
  if (name == "pred") return RecordKind::kPredictions;
  throw InvalidArgument("unknown record kind '" + std::string(name) +
                        "' (expected gt or pred)");
}

ValidationReport validate_jsonl(std::istream& in, RecordKind kind) {
  ValidationReport report;
  report.kind = kind;
  std::unordered_set<std::int64_t> seen;
  static const std::string kSource = "input";
  for_each_line(in, [&](std::size_t line, const std::string& text) {
    ++report.num_records;
    try {
      const JsonRecord r = parse_line(text, kSource, line);
      const std::int64_t qid =
          kind == RecordKind::kGroundTruth
              ? ground_truth_from_json(r.value, kSource, line).qid
              : prediction_from_json(r.value, kSource, line).qid;
      if (!seen.insert(qid).second) {
        report.issues.push_back(
            {line, "qid", "duplicate qid " + std::to_string(qid)});
        return;
      }
      ++report.num_valid;
    } catch (const InputError& e) {
      report.issues.push_back({e.line(), e.field(), e.message()});
    } catch (const InvalidArgument& e) {
      report.issues.push_back({line, "", e.what()});
    }
  });
  return report;
}

}  // namespace mmr
