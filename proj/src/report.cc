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

#include "mmr/report.h"

#include <limits>
#include <string>

#include "mmr/error.h"

namespace mmr {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

template <typename K, typename V>
ordered_json keyed(const std::map<K, V>& m) {
  ordered_json out = ordered_json::object();
  for (const auto& [k, v] : m) {
    if constexpr (std::is_same_v<K, std::string>) {
      out[k] = v;
    } else {
      out[std::to_string(k)] = v;
    }
  }
  return out;
}

// Category-keyed values in configured order, absent categories skipped.
template <typename V>
ordered_json by_category(const std::vector<GtCategory>& cats,
                         const std::map<std::string, V>& m) {
  ordered_json out = ordered_json::object();
  for (const GtCategory& c : cats) {
    if (const auto it = m.find(c.label); it != m.end()) out[c.label] = it->second;
  }
  return out;
}

}  // namespace

ordered_json to_json(const MetricConfig& c) {
  ordered_json cats = ordered_json::array();
  for (const GtCategory& g : c.categories) {
    ordered_json j;
    j["label"] = g.label;
    j["min_gt"] = g.min_gt;
    if (g.max_gt == std::numeric_limits<std::size_t>::max()) {
      j["max_gt"] = nullptr;
    } else {
      j["max_gt"] = g.max_gt;
    }
    cats.push_back(std::move(j));
  }
  ordered_json j;
  j["iou_thresholds"] = c.iou_thresholds;
  j["recall_thresholds"] = c.recall_thresholds;
  j["k_values"] = c.k_values;
  j["categories"] = std::move(cats);
  j["ap_mode"] = std::string(to_string(c.ap_mode));
  return j;
}

ordered_json to_json(const MetricReport& r) {
  MetricConfig echo;
  echo.iou_thresholds = r.iou_thresholds;
  echo.recall_thresholds = r.recall_thresholds;
  echo.k_values = r.k_values;
  echo.categories = r.categories;
  echo.ap_mode = r.ap_mode;

  ordered_json j;
  j["config"] = to_json(echo);
  j["num_queries"] = r.num_queries;
  j["missing_prediction_queries"] = r.missing_prediction_queries;
  j["reordered_prediction_queries"] = r.reordered_prediction_queries;
  j["g_map"] = r.g_map;
  j["ap_by_tau"] = r.ap_by_tau;
  j["map_by_category"] = by_category(r.categories, r.map_by_category);
  j["category_ap_by_tau"] = by_category(r.categories, r.category_ap_by_tau);
  j["query_counts"] = by_category(r.categories, r.query_counts);
  j["miou_at_k"] = keyed(r.miou_at_k);
  j["mr_at_k"] = keyed(r.mr_at_k);
  j["mr_at_k_by_tau"] = keyed(r.mr_at_k_by_tau);
  j["eligible_query_counts"] = keyed(r.eligible_query_counts);
  return j;
}

ordered_json to_json(const PostProcessConfig& c) {
  ordered_json j;
  j["clip_rate"] = c.clip_rate;
  j["min_len"] = c.min_len;
  if (c.max_len) {
    j["max_len"] = *c.max_len;
  } else {
    j["max_len"] = "duration";
  }
  j["round_granularity"] = c.round_granularity;
  return j;
}

ordered_json to_json(const StatsOptions& o) {
  ordered_json j;
  j["bin_width"] = o.bin_width;
  j["grid_resolution"] = o.grid_resolution;
  j["top_k_words"] = o.top_k_words;
  j["long_moment_seconds"] = o.long_moment_seconds;
  j["num_stop_words"] = o.stop_words.size();
  j["num_lemmas"] = o.lemmas.size();
  return j;
}

ordered_json to_json(const DatasetStats& s) {
  ordered_json grid = ordered_json::array();
  for (std::size_t i = 0; i < s.location_grid.rows(); ++i) {
    const auto row = s.location_grid.row(i);
    grid.push_back(std::vector<std::size_t>(row.begin(), row.end()));
  }
  ordered_json words = ordered_json::array();
  for (const auto& [w, n] : s.top_words) words.push_back({w, n});

  ordered_json j;
  j["num_queries"] = s.num_queries;
  j["num_videos"] = s.num_videos;
  j["num_moments"] = s.num_moments;
  j["avg_moments_per_query"] = s.avg_moments_per_query;
  j["avg_query_len_tokens"] = s.avg_query_len_tokens;
  j["total_moment_seconds"] = s.total_moment_seconds;
  j["total_video_seconds"] = s.total_video_seconds;
  j["moment_video_ratio"] = s.moment_video_ratio;
  j["moments_per_query"] = keyed(s.moments_per_query);
  j["long_moments"] = {
      {"threshold_seconds", s.long_moment_seconds},
      {"count", s.long_moments},
      {"fraction_of_moments", s.long_moment_fraction},
      {"queries_with_long_moment", s.queries_with_long_moment},
      {"fraction_of_queries", s.long_moment_query_fraction}};
  j["length_histogram"] = {{"bin_width", s.bin_width},
                           {"counts", s.length_histogram}};
  j["location_grid"] = {{"resolution", s.location_grid.rows()},
                        {"counts", std::move(grid)}};
  j["top_words"] = std::move(words);
  return j;
}

ordered_json to_json(const QcReport& r) {
  ordered_json entries = ordered_json::array();
  for (const QcEntry& e : r.entries) {
    entries.push_back(
        {{"qid", e.qid}, {"overlap", e.overlap}, {"flagged", e.flagged}});
  }
  ordered_json j;
  j["threshold"] = r.threshold;
  j["num_compared"] = r.entries.size();
  j["num_flagged"] = r.flagged.size();
  if (r.pass_rate) {
    j["pass_rate"] = *r.pass_rate;
  } else {
    j["pass_rate"] = nullptr;
  }
  j["flagged"] = r.flagged;
  j["missing_in_a"] = r.missing_in_a;
  j["missing_in_b"] = r.missing_in_b;
  j["entries"] = std::move(entries);
  return j;
}

ordered_json to_json(const ValidationReport& r) {
  ordered_json issues = ordered_json::array();
  for (const ValidationIssue& i : r.issues) {
    issues.push_back(
        {{"line", i.line}, {"field", i.field}, {"message", i.message}});
  }
  ordered_json j;
  j["kind"] = std::string(to_string(r.kind));
  j["ok"] = r.ok();
  j["num_records"] = r.num_records;
  j["num_valid"] = r.num_valid;
  j["issues"] = std::move(issues);
  return j;
}

ordered_json to_json(const SynthConfig& c) {
  ordered_json j;
  j["seed"] = c.seed;
  j["num_queries"] = c.num_queries;
  j["first_qid"] = c.first_qid;
  j["duration"] = {c.min_duration, c.max_duration};
  j["moments_per_query"] = {c.min_moments, c.max_moments};
  j["moment_len"] = {c.min_moment_len, c.max_moment_len};
  j["min_gap"] = c.min_gap;
  j["time_quantum"] = c.time_quantum;
  j["jitter"] = c.jitter;
  j["drop_prob"] = c.drop_prob;
  j["spurious_prob"] = c.spurious_prob;
  j["score_margin"] = c.score_margin;
  return j;
}

ordered_json to_json(std::int64_t qid, const SupervisionTargets& t) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < t.agreement.rows(); ++i) {
    const auto row = t.agreement.row(i);
    rows.push_back(std::vector<int>(row.begin(), row.end()));
  }
  ordered_json j;
  j["qid"] = qid;
  j["num_clips"] = t.agreement.rows();
  j["max_tiou"] = t.max_tiou;
  j["agreement"] = std::move(rows);
  return j;
}

MetricConfig metric_config_from_json(const json& m) {
  if (!m.is_object()) throw InvalidArgument("config must be a mapping");
  MetricConfig c;
  try {
    for (const auto& [key, value] : m.items()) {
      if (key == "iou_thresholds") {
        c.iou_thresholds = value.get<std::vector<double>>();
      } else if (key == "recall_thresholds") {
        c.recall_thresholds = value.get<std::vector<double>>();
      } else if (key == "k_values") {
        c.k_values = value.get<std::vector<int>>();
      } else if (key == "ap_mode") {
        c.ap_mode = parse_ap_mode(value.get<std::string>());
      } else {
        throw InvalidArgument("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("bad config value: ") + e.what());
  }
  c.validate();
  return c;
}

}  // namespace mmr
