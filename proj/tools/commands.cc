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

#include "commands.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "manifest.h"
#include "mmr/dataset.h"
#include "mmr/error.h"
#include "mmr/qc.h"
#include "mmr/report.h"
#include "mmr/targets.h"

namespace mmr::cli {

using nlohmann::json;

namespace {

Document with_manifest(const std::string& command,
                       std::vector<InputFile> inputs, Document config,
                       const std::optional<std::string>& timestamp) {
  RunManifest m;
  m.command = command;
  m.timestamp = resolve_timestamp(timestamp, inputs);
  m.inputs = std::move(inputs);
  m.config = std::move(config);
  Document d;
  d["manifest"] = to_json(m);
  return d;
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v * 100.0);
  return buf;
}

// Left-aligned columns separated by two spaces.
std::string render_table(const std::vector<std::string>& header,
                         const std::vector<std::string>& row) {
  std::ostringstream out;
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) {
    width[i] = std::max(header[i].size(), row[i].size());
  }
  for (const auto* line : {&header, &row}) {
    for (std::size_t i = 0; i < line->size(); ++i) {
      out << (*line)[i];
      if (i + 1 < line->size()) {
        out << std::string(width[i] - (*line)[i].size() + 2, ' ');
      }
    }
    out << '\n';
  }
  return out.str();
}

json windows_json(std::span<const ScoredInterval> windows) {
  json out = json::array();
  for (const ScoredInterval& w : windows) {
    out.push_back({w.start(), w.end(), w.score()});
  }
  return out;
}

PostProcessConfig make_pp_config(double rate, std::optional<double> gran,
                                 std::optional<double> min_len,
                                 std::optional<double> max_len,
                                 double duration) {
  if (!(rate > 0.0)) throw InvalidArgument("clip rate must be positive");
  PostProcessConfig c = PostProcessConfig::for_clip_rate(rate, duration);
  if (gran) c.round_granularity = *gran;
  if (min_len) c.min_len = *min_len;
  c.max_len = max_len;
  return c;
}

std::map<std::int64_t, double> durations_by_qid(const std::string& gt_path) {
  std::map<std::int64_t, double> out;
  for (const GroundTruthEntry& e : load_ground_truth(gt_path)) {
    out[e.qid] = e.duration;
  }
  return out;
}

std::vector<RawWindow> raw_windows(std::span<const ScoredInterval> windows) {
  std::vector<RawWindow> out;
  out.reserve(windows.size());
  for (const ScoredInterval& w : windows) {
    out.push_back({w.start(), w.end(), w.score()});
  }
  return out;
}

void check_report_ranges(const MetricReport& r) {
  auto unit = [](double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; };
  bool ok = unit(r.g_map);
  for (double v : r.ap_by_tau) ok = ok && unit(v);
  for (const auto& [k, v] : r.map_by_category) ok = ok && unit(v);
  for (const auto& [k, v] : r.miou_at_k) ok = ok && unit(v);
  for (const auto& [k, v] : r.mr_at_k) ok = ok && unit(v);
  if (!ok) throw InvariantViolation("metric value outside [0, 1]");
}

void check_nms(std::span<const ScoredInterval> in,
               std::span<const std::size_t> keep, double thr,
               std::int64_t qid) {
  std::vector<bool> kept(in.size(), false);
  for (std::size_t k : keep) kept[k] = true;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    for (std::size_t j = i + 1; j < keep.size(); ++j) {
      if (iou(in[keep[i]].interval(), in[keep[j]].interval()) > thr) {
        throw InvariantViolation("nms kept overlapping windows in qid " +
                                 std::to_string(qid));
      }
    }
  }
  for (std::size_t d = 0; d < in.size(); ++d) {
    if (kept[d]) continue;
    bool witnessed = false;
    for (std::size_t k : keep) {
      witnessed = witnessed ||
                  (iou(in[k].interval(), in[d].interval()) > thr &&
                   in[k].score() >= in[d].score());
    }
    if (!witnessed) {
      throw InvariantViolation("nms removed an unsuppressed window in qid " +
                               std::to_string(qid));
    }
  }
}

}  // namespace

EvaluateResult cmd_evaluate(const EvaluateRequest& req) {
  req.config.validate();
  const auto gt = load_ground_truth(req.gt_path);
  const auto preds = load_predictions(req.pred_path);
  EvaluateResult r;
  r.report = evaluate(gt, preds, req.config, EvalOptions{req.threads});
  check_report_ranges(r.report);
  // Thread count is left out on purpose: it never changes the numbers.
  r.document = with_manifest("evaluate",
                             {{"ground_truth", req.gt_path},
                              {"predictions", req.pred_path}},
                             to_json(req.config), req.timestamp);
  r.document["report"] = to_json(r.report);
  return r;
}

std::string format_metric_table(const MetricReport& r) {
  std::vector<std::string> header{"G-mAP"}, row{fixed2(r.g_map)};
  for (const GtCategory& c : r.categories) {
    header.push_back("@" + c.label);
    const auto it = r.map_by_category.find(c.label);
    row.push_back(it == r.map_by_category.end() ? "-" : fixed2(it->second));
  }
  for (const char* name : {"mIoU", "mR"}) {
    const auto& m = std::string(name) == "mIoU" ? r.miou_at_k : r.mr_at_k;
    for (int k : r.k_values) {
      header.push_back(std::string(name) + "@" + std::to_string(k));
      const auto it = m.find(k);
      row.push_back(it == m.end() ? "-" : fixed2(it->second));
    }
  }
  std::string out = render_table(header, row);
  out += "queries: " + std::to_string(r.num_queries) +
         ", without predictions: " +
         std::to_string(r.missing_prediction_queries) + "\n";
  return out;
}

StatsResult cmd_stats(const StatsRequest& req) {
  StatsOptions o = req.options;
  std::vector<InputFile> inputs{{"ground_truth", req.gt_path}};
  if (req.stop_words_path) {
    std::ifstream in(*req.stop_words_path);
    if (!in) throw InputError(*req.stop_words_path, 0, "", "cannot read stop words");
    o.stop_words = read_word_list(in);
    inputs.push_back({"stop_words", *req.stop_words_path});
  }
  if (req.lemma_path) {
    std::ifstream in(*req.lemma_path);
    if (!in) throw InputError(*req.lemma_path, 0, "", "cannot read lemma table");
    o.lemmas = read_lemma_table(in);
    inputs.push_back({"lemmas", *req.lemma_path});
  }
  o.validate();
  const auto gt = load_ground_truth(req.gt_path);
  StatsResult r;
  r.stats = compute_stats(gt, o);
  r.document = with_manifest("stats", inputs, to_json(o), req.timestamp);
  r.document["stats"] = to_json(r.stats);
  return r;
}

std::string format_stats_table(const DatasetStats& s) {
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };
  const std::string out = render_table(
      {"queries", "videos", "moments", "moments/query", "query tokens",
       "moment/video", "long moments"},
      {std::to_string(s.num_queries), std::to_string(s.num_videos),
       std::to_string(s.num_moments), num(s.avg_moments_per_query),
       num(s.avg_query_len_tokens), num(s.moment_video_ratio),
       std::to_string(s.long_moments) + " (" +
           num(100.0 * s.long_moment_fraction) + "%)"});
  std::string words = "top words:";
  for (const auto& [w, n] : s.top_words) {
    words += " " + w + "(" + std::to_string(n) + ")";
  }
  return out + words + "\n";
}

Document cmd_validate(const ValidateRequest& req) {
  const RecordKind kind = parse_record_kind(req.kind);
  std::ifstream in(req.path, std::ios::binary);
  if (!in) throw InputError(req.path, 0, "", "cannot read input");
  const ValidationReport report = validate_jsonl(in, kind);
  Document config;
  config["kind"] = std::string(to_string(kind));
  Document d = with_manifest("validate", {{"input", req.path}}, config,
                             req.timestamp);
  d["validation"] = to_json(report);
  return d;
}

Document cmd_qc(const QcRequest& req) {
  const auto a = load_ground_truth(req.a_path);
  const auto b = load_ground_truth(req.b_path);
  const QcReport r = qc_compare(a, b, req.threshold);
  Document config;
  config["threshold"] = req.threshold;
  Document d = with_manifest(
      "qc", {{"annotation_a", req.a_path}, {"annotation_b", req.b_path}},
      config, req.timestamp);
  d["qc"] = to_json(r);
  return d;
}

RecordOutput cmd_nms(const NmsRequest& req) {
  if (!(req.iou > 0.0 && req.iou <= 1.0)) {
    throw InvalidArgument("nms threshold must lie in (0, 1]");
  }
  const auto records = read_jsonl_file(req.pred_path, "predictions");
  const auto raw = raw_predictions_from_records(records, req.pred_path);
  RecordOutput out;
  std::size_t in_count = 0, out_count = 0;
  for (const RawPredictionRecord& r : raw) {
    const PredictionEntry p =
        prediction_from_json(r.source.value, req.pred_path, r.source.line);
    const std::vector<std::size_t> keep = nms_keep(p.windows, req.iou);
    check_nms(p.windows, keep, req.iou, p.qid);
    std::vector<ScoredInterval> kept;
    for (std::size_t k : keep) kept.push_back(p.windows[k]);
    json rec = r.source.value;
    rec["pred_relevant_windows"] = windows_json(kept);
    out.records.push_back(std::move(rec));
    in_count += p.windows.size();
    out_count += kept.size();
  }
  Document config;
  config["iou_threshold"] = req.iou;
  out.manifest_document = with_manifest(
      "nms", {{"predictions", req.pred_path}}, config, req.timestamp);
  out.manifest_document["summary"] = {{"queries", raw.size()},
                                      {"windows_in", in_count},
                                      {"windows_out", out_count}};
  return out;
}

RecordOutput cmd_postprocess(const PostprocessRequest& req) {
  std::vector<InputFile> inputs{{"predictions", req.pred_path}};
  std::map<std::int64_t, double> durations;
  if (req.gt_path) {
    durations = durations_by_qid(*req.gt_path);
    inputs.push_back({"ground_truth", *req.gt_path});
  }
  std::map<std::int64_t, std::vector<double>> verification;
  if (req.verification_path) {
    inputs.push_back({"verification", *req.verification_path});
    const auto recs = read_jsonl_file(*req.verification_path, "verification scores");
    for (const JsonRecord& r : recs) {
      const json& qid = r.value.value("qid", json());
      const json& scores = r.value.value("scores", json());
      if (!qid.is_number_integer()) {
        throw InputError(*req.verification_path, r.line, "qid", "expected an integer");
      }
      if (!scores.is_array()) {
        throw InputError(*req.verification_path, r.line, "scores", "expected a list");
      }
      std::vector<double> v;
      for (const json& s : scores) {
        if (!s.is_number()) {
          throw InputError(*req.verification_path, r.line, "scores", "expected a number");
        }
        v.push_back(s.get<double>());
      }
      verification[qid.get<std::int64_t>()] = std::move(v);
    }
  }

  const auto records = read_jsonl_file(req.pred_path, "predictions");
  const auto raw = raw_predictions_from_records(records, req.pred_path);
  RecordOutput out;
  std::size_t windows = 0;
  for (const RawPredictionRecord& r : raw) {
    double duration = 0.0;
    if (const auto it = durations.find(r.qid); it != durations.end()) {
      duration = it->second;
    } else if (req.gt_path) {
      throw InputError(req.pred_path, r.source.line, "qid",
                       "unknown qid " + std::to_string(r.qid));
    } else if (req.duration) {
      duration = *req.duration;
    } else if (const auto d = r.source.value.find("duration");
               d != r.source.value.end() && d->is_number()) {
      duration = d->get<double>();
    } else {
      throw InputError(req.pred_path, r.source.line, "duration",
                       "no duration for qid " + std::to_string(r.qid));
    }
    const PostProcessConfig cfg = make_pp_config(
        req.clip_rate, req.granularity, req.min_len, req.max_len, duration);
    std::vector<ScoredInterval> refined;
    try {
      refined = postprocess(r.windows, cfg);
    } catch (const InvalidArgument& e) {
      throw InputError(req.pred_path, r.source.line, "pred_relevant_windows",
                       e.what());
    }
    for (const ScoredInterval& w : refined) {
      if (w.end() > duration) {
        throw InvariantViolation("refined window past the video end");
      }
    }
    if (postprocess(raw_windows(refined), cfg) != refined) {
      throw InvariantViolation("post-processing is not idempotent for qid " +
                               std::to_string(r.qid));
    }
    if (const auto v = verification.find(r.qid); v != verification.end()) {
      if (v->second.size() != refined.size()) {
        throw InputError(*req.verification_path, 0, "scores",
                         "qid " + std::to_string(r.qid) + " has " +
                             std::to_string(v->second.size()) +
                             " scores for " + std::to_string(refined.size()) +
                             " windows");
      }
      refined = rerank_with_verification(refined, v->second, req.blend_weight);
    }
    windows += refined.size();
    json rec = r.source.value;
    rec["pred_relevant_windows"] = windows_json(refined);
    out.records.push_back(std::move(rec));
  }

  Document config = to_json(
      make_pp_config(req.clip_rate, req.granularity, req.min_len, req.max_len, 1.0));
  if (req.duration) config["duration"] = *req.duration;
  if (req.verification_path) config["blend_weight"] = req.blend_weight;
  out.manifest_document =
      with_manifest("postprocess", inputs, config, req.timestamp);
  out.manifest_document["summary"] = {{"queries", raw.size()},
                                      {"windows", windows}};
  return out;
}

Document cmd_targets(const TargetsRequest& req) {
  const auto gt = load_ground_truth(req.gt_path);
  auto preds = load_predictions(req.pred_path);
  std::map<std::int64_t, const GroundTruthEntry*> by_qid;
  for (const GroundTruthEntry& e : gt) by_qid[e.qid] = &e;
  std::sort(preds.begin(), preds.end(),
            [](const PredictionEntry& a, const PredictionEntry& b) {
              return a.qid < b.qid;
            });

  Document queries = Document::array();
  for (const PredictionEntry& p : preds) {
    const auto it = by_qid.find(p.qid);
    if (it == by_qid.end()) {
      throw InputError(req.pred_path, 0, "qid",
                       "unknown qid " + std::to_string(p.qid));
    }
    const GroundTruthEntry& g = *it->second;
    std::vector<ScoredInterval> windows = p.windows;
    if (req.refine) {
      windows = postprocess(raw_windows(windows),
                            make_pp_config(req.clip_rate, req.granularity,
                                           req.min_len, req.max_len, g.duration));
    }
    std::vector<Interval> spans;
    for (const ScoredInterval& w : windows) spans.push_back(w.interval());
    const auto num_clips = std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::ceil(g.duration * req.clip_rate)));
    Document q = to_json(p.qid, compute_targets(spans, g.moments, num_clips,
                                                req.clip_rate));
    q["windows"] = windows_to_json(windows);
    queries.push_back(std::move(q));
  }

  Document config;
  config["clip_rate"] = req.clip_rate;
  config["refine"] = req.refine;
  if (req.refine) {
    config["postprocess"] = to_json(make_pp_config(
        req.clip_rate, req.granularity, req.min_len, req.max_len, 1.0));
  }
  Document d = with_manifest(
      "targets", {{"predictions", req.pred_path}, {"ground_truth", req.gt_path}},
      config, req.timestamp);
  d["clip_rate"] = req.clip_rate;
  d["queries"] = std::move(queries);
  return d;
}

Document cmd_synth(const SynthRequest& req) {
  const SynthFixture f = generate(req.config);
  std::ostringstream gt, pred;
  write_jsonl(gt, f.gt);
  write_jsonl(pred, f.preds);
  for (const auto& [path, text] :
       {std::pair{req.gt_out, gt.str()}, std::pair{req.pred_out, pred.str()}}) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out.flush()) throw InputError(path, 0, "", "cannot write output");
  }
  Document d = with_manifest("synth", {}, to_json(req.config), req.timestamp);
  d["outputs"] = Document::array();
  d["outputs"].push_back({{"role", "ground_truth"},
                          {"path", req.gt_out},
                          {"sha256", sha256_file(req.gt_out)},
                          {"records", f.gt.size()}});
  d["outputs"].push_back({{"role", "predictions"},
                          {"path", req.pred_out},
                          {"sha256", sha256_file(req.pred_out)},
                          {"records", f.preds.size()}});
  return d;
}

}  // namespace mmr::cli
