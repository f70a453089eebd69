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

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "commands.h"
#include "manifest.h"
#include "mmr/error.h"
#include "mmr/stats.h"

namespace mmr::cli {
namespace {

// Writes `text` to `path`, or to `out` for "-".
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f << text;
  if (!f.flush()) throw InputError(path, 0, "", "cannot write output");
}

std::string pretty(const Document& d) { return d.dump(2) + "\n"; }

std::string jsonl(const std::vector<nlohmann::json>& records) {
  std::string s;
  for (const auto& r : records) s += r.dump() + "\n";
  return s;
}

struct Flags {
  std::string out;
  std::optional<std::string> timestamp;
  bool quiet = false;
};

void add_common(CLI::App* cmd, Flags& f, const char* out_help) {
  cmd->add_option("--out", f.out, out_help);
  cmd->add_option("--timestamp", f.timestamp,
                  "Manifest timestamp (default: SOURCE_DATE_EPOCH or newest "
                  "input mtime)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Multi-moment retrieval evaluation and post-processing"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  // evaluate
  EvaluateRequest ev;
  Flags ev_f;
  std::string ap_mode = "exact-envelope";
  auto* evaluate = app.add_subcommand("evaluate", "Score predictions against ground truth");
  evaluate->add_option("--gt", ev.gt_path, "Ground-truth JSONL")->required();
  evaluate->add_option("--pred", ev.pred_path, "Prediction JSONL")->required();
  evaluate->add_option("--threads", ev.threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  evaluate->add_option("--iou-thresholds", ev.config.iou_thresholds,
                       "IoU thresholds for G-mAP, comma separated")
      ->delimiter(',');
  evaluate->add_option("--recall-thresholds", ev.config.recall_thresholds,
                       "IoU thresholds for mR@k, comma separated")
      ->delimiter(',');
  evaluate->add_option("--k", ev.config.k_values, "k values for mIoU@k and mR@k")
      ->delimiter(',');
  evaluate->add_option("--ap-mode", ap_mode, "exact-envelope or eleven-point");
  evaluate->add_flag("--quiet", ev_f.quiet, "Do not print the table");
  add_common(evaluate, ev_f, "Write the JSON report here ('-' for stdout)");

  // stats
  StatsRequest st;
  Flags st_f;
  std::string tables_dir;
  bool no_stop_words = false;
  auto* stats = app.add_subcommand("stats", "Summarize an annotation file");
  stats->add_option("--gt", st.gt_path, "Ground-truth JSONL")->required();
  stats->add_option("--bin-width", st.options.bin_width, "Length histogram bin (s)");
  stats->add_option("--grid", st.options.grid_resolution, "Location grid cells per axis");
  stats->add_option("--top-words", st.options.top_k_words, "Number of top words");
  stats->add_option("--long-moment", st.options.long_moment_seconds,
                    "Moments strictly longer than this count as long (s)");
  stats->add_option("--stop-words", st.stop_words_path, "Stop-word list file");
  stats->add_flag("--no-stop-words", no_stop_words, "Keep every token");
  stats->add_option("--lemmas", st.lemma_path, "Lemma table ('surface lemma' lines)");
  stats->add_option("--tables-dir", tables_dir, "Write TSV histogram tables here");
  stats->add_flag("--quiet", st_f.quiet, "Do not print the summary");
  add_common(stats, st_f, "Write the JSON report here ('-' for stdout)");

  // validate
  ValidateRequest va;
  Flags va_f;
  auto* validate = app.add_subcommand("validate", "Check a JSONL file and list every problem");
  validate->add_option("input", va.path, "File to check")->required();
  validate->add_option("--kind", va.kind, "gt or pred")
      ->check(CLI::IsMember({"gt", "pred"}));
  add_common(validate, va_f, "Write the JSON report here ('-' for stdout)");

  // qc
  QcRequest qc;
  Flags qc_f;
  auto* qcmd = app.add_subcommand("qc", "Compare two annotation passes");
  qcmd->add_option("--a", qc.a_path, "First annotation JSONL")->required();
  qcmd->add_option("--b", qc.b_path, "Second annotation JSONL")->required();
  qcmd->add_option("--threshold", qc.threshold, "Flag overlap below this");
  add_common(qcmd, qc_f, "Write the JSON report here ('-' for stdout)");

  // nms
  NmsRequest nm;
  Flags nm_f;
  std::string nm_manifest;
  nm_f.out = "-";
  auto* nms = app.add_subcommand("nms", "Suppress overlapping predicted windows");
  nms->add_option("--pred", nm.pred_path, "Prediction JSONL")->required();
  nms->add_option("--iou", nm.iou, "Suppress above this IoU");
  nms->add_option("--manifest", nm_manifest, "Write the run manifest here");
  add_common(nms, nm_f, "Output JSONL (default stdout)");

  // postprocess
  PostprocessRequest pp;
  Flags pp_f;
  std::string pp_manifest;
  pp_f.out = "-";
  auto* post = app.add_subcommand("postprocess", "Clip, round and length-constrain windows");
  post->add_option("--pred", pp.pred_path, "Prediction JSONL")->required();
  post->add_option("--gt", pp.gt_path, "Take video durations from this ground truth");
  post->add_option("--duration", pp.duration, "Video duration for every query (s)");
  post->add_option("--clip-rate", pp.clip_rate, "Clips per second");
  post->add_option("--granularity", pp.granularity, "Rounding step (s), default one clip");
  post->add_option("--min-len", pp.min_len, "Minimum window length (s), default one clip");
  post->add_option("--max-len", pp.max_len, "Maximum window length (s), default duration");
  post->add_option("--verification", pp.verification_path,
                   "JSONL of {qid, scores} to blend in and re-rank");
  post->add_option("--blend-weight", pp.blend_weight, "Weight of verification scores");
  post->add_option("--manifest", pp_manifest, "Write the run manifest here");
  add_common(post, pp_f, "Output JSONL (default stdout)");

  // targets
  TargetsRequest tg;
  Flags tg_f;
  tg_f.out = "-";
  auto* targets = app.add_subcommand("targets", "Emit tIoU and clip agreement targets");
  targets->add_option("--pred", tg.pred_path, "Prediction JSONL")->required();
  targets->add_option("--gt", tg.gt_path, "Ground-truth JSONL")->required();
  targets->add_option("--clip-rate", tg.clip_rate, "Clips per second");
  targets->add_flag("--refine", tg.refine, "Post-process windows first");
  targets->add_option("--granularity", tg.granularity, "Rounding step for --refine");
  targets->add_option("--min-len", tg.min_len, "Minimum length for --refine");
  targets->add_option("--max-len", tg.max_len, "Maximum length for --refine");
  add_common(targets, tg_f, "Write the JSON document here (default stdout)");

  // synth
  SynthRequest sy;
  Flags sy_f;
  SynthConfig& sc = sy.config;
  auto* synth = app.add_subcommand("synth", "Write a seeded synthetic fixture pair");
  synth->add_option("--gt-out", sy.gt_out, "Ground-truth JSONL to write")->required();
  synth->add_option("--pred-out", sy.pred_out, "Prediction JSONL to write")->required();
  synth->add_option("--seed", sc.seed, "Generator seed");
  synth->add_option("--num-queries", sc.num_queries, "Queries to generate");
  synth->add_option("--first-qid", sc.first_qid, "qid of the first query");
  synth->add_option("--min-duration", sc.min_duration, "Shortest video (s)");
  synth->add_option("--max-duration", sc.max_duration, "Longest video (s)");
  synth->add_option("--min-moments", sc.min_moments, "Fewest moments per query");
  synth->add_option("--max-moments", sc.max_moments, "Most moments per query");
  synth->add_option("--min-moment-len", sc.min_moment_len, "Shortest moment (s)");
  synth->add_option("--max-moment-len", sc.max_moment_len, "Longest moment (s)");
  synth->add_option("--min-gap", sc.min_gap, "Gap between moments (s)");
  synth->add_option("--time-quantum", sc.time_quantum, "Time step, a power of two (s)");
  synth->add_option("--jitter", sc.jitter, "Max endpoint shift of predictions (s)");
  synth->add_option("--drop-prob", sc.drop_prob, "Chance a moment gets no prediction");
  synth->add_option("--spurious-prob", sc.spurious_prob, "Chance of an extra false window");
  synth->add_option("--score-margin", sc.score_margin, "Score gap true vs spurious");
  add_common(synth, sy_f, "Write the JSON summary here (default stdout)");

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    // Help and version exit 0; every usage error is an input error.
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (*evaluate) {
      ev.config.ap_mode = parse_ap_mode(ap_mode);
      ev.timestamp = ev_f.timestamp;
      const EvaluateResult r = cmd_evaluate(ev);
      if (!ev_f.out.empty()) emit(ev_f.out, pretty(r.document), out);
      if (!ev_f.quiet && ev_f.out != "-") out << format_metric_table(r.report);
    } else if (*stats) {
      st.timestamp = st_f.timestamp;
      if (no_stop_words) st.options.stop_words.clear();
      const StatsResult r = cmd_stats(st);
      if (!tables_dir.empty()) {
        std::filesystem::create_directories(tables_dir);
        const std::filesystem::path dir(tables_dir);
        std::ostringstream h, g, w;
        write_length_histogram_tsv(h, r.stats);
        write_location_grid_tsv(g, r.stats);
        write_top_words_tsv(w, r.stats);
        emit((dir / "length_histogram.tsv").string(), h.str(), out);
        emit((dir / "location_grid.tsv").string(), g.str(), out);
        emit((dir / "top_words.tsv").string(), w.str(), out);
      }
      if (!st_f.out.empty()) emit(st_f.out, pretty(r.document), out);
      if (!st_f.quiet && st_f.out != "-") out << format_stats_table(r.stats);
    } else if (*validate) {
      va.timestamp = va_f.timestamp;
      const Document d = cmd_validate(va);
      if (!va_f.out.empty()) emit(va_f.out, pretty(d), out);
      const auto& v = d["validation"];
      if (va_f.out != "-") {
        for (const auto& i : v["issues"]) {
          out << va.path << ":" << i["line"].get<std::size_t>() << ": "
              << (i["field"].get<std::string>().empty()
                      ? ""
                      : i["field"].get<std::string>() + ": ")
              << i["message"].get<std::string>() << "\n";
        }
        out << v["num_valid"].get<std::size_t>() << " of "
            << v["num_records"].get<std::size_t>() << " records valid\n";
      }
      return v["ok"].get<bool>() ? 0 : 1;
    } else if (*qcmd) {
      qc.timestamp = qc_f.timestamp;
      const Document d = cmd_qc(qc);
      if (!qc_f.out.empty()) emit(qc_f.out, pretty(d), out);
      if (qc_f.out != "-") {
        const auto& q = d["qc"];
        out << "compared " << q["num_compared"].get<std::size_t>()
            << ", flagged " << q["num_flagged"].get<std::size_t>();
        if (!q["pass_rate"].is_null()) {
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.2f", 100.0 * q["pass_rate"].get<double>());
          out << ", pass rate " << buf << "%";
        }
        out << "\n";
        for (const auto& id : q["flagged"]) out << "flagged qid " << id.get<long long>() << "\n";
      }
    } else if (*nms) {
      nm.timestamp = nm_f.timestamp;
      const RecordOutput r = cmd_nms(nm);
      if (!nm_manifest.empty()) emit(nm_manifest, pretty(r.manifest_document), out);
      emit(nm_f.out.empty() ? "-" : nm_f.out, jsonl(r.records), out);
    } else if (*post) {
      pp.timestamp = pp_f.timestamp;
      const RecordOutput r = cmd_postprocess(pp);
      if (!pp_manifest.empty()) emit(pp_manifest, pretty(r.manifest_document), out);
      emit(pp_f.out.empty() ? "-" : pp_f.out, jsonl(r.records), out);
    } else if (*targets) {
      tg.timestamp = tg_f.timestamp;
      emit(tg_f.out.empty() ? "-" : tg_f.out, pretty(cmd_targets(tg)), out);
    } else if (*synth) {
      sy.timestamp = sy_f.timestamp;
      emit(sy_f.out.empty() ? "-" : sy_f.out, pretty(cmd_synth(sy)), out);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace mmr::cli
