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

#include "mmr/stats.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "mmr/error.h"

namespace mmr {
namespace {

// Covered time by counting 1/8 s cells; exact for endpoints on that grid.
double covered_cells(const std::vector<Interval>& spans, double duration) {
  long cells = 0;
  for (long c = 0; c < static_cast<long>(duration * 8); ++c) {
    const double mid = (c + 0.5) / 8;
    for (const Interval& s : spans) {
      if (mid > s.start() && mid < s.end()) {
        ++cells;
        break;
      }
    }
  }
  return cells / 8.0;
}

std::vector<GroundTruthEntry> random_entries(std::mt19937_64& rng, int n) {
  std::vector<GroundTruthEntry> out;
  for (int q = 0; q < n; ++q) {
    GroundTruthEntry e;
    e.qid = q * 7 % 101;
    const int v = static_cast<int>(rng() % 5);
    e.vid = "v" + std::to_string(v);
    e.duration = 40.0 + 10.0 * v;
    e.query = "Someone walks to the dog, then someone runs!";
    const int m = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < m; ++i) {
      const double s = static_cast<double>(rng() % 300) / 8;
      const double len = static_cast<double>(rng() % 200) / 8;
      e.moments.emplace_back(s, std::min(e.duration, s + len));
    }
    out.push_back(std::move(e));
  }
  return out;
}

TEST(WordTokensTest, LowercasesAndSplitsOnPunctuation) {
  EXPECT_EQ(word_tokens("A man's dog, RUNNING!  fast"),
            (std::vector<std::string>{"a", "man", "s", "dog", "running",
                                      "fast"}));
  EXPECT_EQ(word_tokens("café-au-lait"),
            (std::vector<std::string>{"café", "au", "lait"}));
  EXPECT_TRUE(word_tokens(" ,.; ").empty());
}

TEST(StatsTest, WholeVideoMoment) {
  const std::vector<GroundTruthEntry> e{{1, "a b c", "v", 150, {{0, 150}}}};
  const DatasetStats s = compute_stats(e);
  EXPECT_EQ(s.num_queries, 1u);
  EXPECT_EQ(s.avg_moments_per_query, 1.0);
  EXPECT_EQ(s.moment_video_ratio, 1.0);
  EXPECT_EQ(s.location_grid(0, 9), 1u);
  std::size_t mass = 0;
  for (auto c : s.location_grid.data()) mass += c;
  EXPECT_EQ(mass, 1u);
  EXPECT_EQ(s.avg_query_len_tokens, 3.0);
  EXPECT_EQ(s.long_moments, 1u);
}

TEST(StatsTest, HandCountedExample) {
  const std::vector<GroundTruthEntry> e{
      {1, "the dog runs", "v1", 100, {{0, 10}, {50, 80}}},
      {2, "a dog sits down quietly", "v1", 100, {{5, 20}}},
      {3, "cats run", "v2", 50, {{10, 20}}},
  };
  StatsOptions o;
  o.bin_width = 10;
  o.lemmas = {{"runs", "run"}};
  const DatasetStats s = compute_stats(e, o);
  EXPECT_EQ(s.num_queries, 3u);
  EXPECT_EQ(s.num_videos, 2u);
  EXPECT_EQ(s.num_moments, 4u);
  EXPECT_DOUBLE_EQ(s.avg_moments_per_query, 4.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.avg_query_len_tokens, 10.0 / 3.0);
  // v1 covers [0, 20] + [50, 80] = 50 of 100; v2 covers 10 of 50.
  EXPECT_EQ(s.total_moment_seconds, 60.0);
  EXPECT_EQ(s.total_video_seconds, 150.0);
  EXPECT_DOUBLE_EQ(s.moment_video_ratio, 0.4);
  // lengths 10, 30, 15, 10 -> bins 1, 3, 1, 1
  EXPECT_EQ(s.length_histogram, (std::vector<std::size_t>{0, 3, 0, 1}));
  EXPECT_EQ(s.long_moments, 1u);
  EXPECT_EQ(s.long_moment_fraction, 0.25);
  EXPECT_EQ(s.queries_with_long_moment, 1u);
  EXPECT_DOUBLE_EQ(s.long_moment_query_fraction, 1.0 / 3.0);
  ASSERT_GE(s.top_words.size(), 3u);
  EXPECT_EQ(s.top_words[0], (std::pair<std::string, std::size_t>{"dog", 2}));
  EXPECT_EQ(s.top_words[1], (std::pair<std::string, std::size_t>{"run", 2}));
  for (const auto& [w, n] : s.top_words) {
    EXPECT_NE(w, "the");
    EXPECT_NE(w, "a");
  }
  EXPECT_EQ(s.moments_per_query, (std::map<std::size_t, std::size_t>{{1, 2}, {2, 1}}));
  EXPECT_EQ(s.location_grid(0, 1), 1u);  // [0, 10] of 100
  EXPECT_EQ(s.location_grid(2, 4), 1u);  // [10, 20] of 50
}

TEST(StatsTest, MatchesCellOracleAndIgnoresOrder) {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 40; ++trial) {
    auto e = random_entries(rng, 25);
    const DatasetStats s = compute_stats(e);

    std::map<std::string, std::vector<Interval>> by_vid;
    std::map<std::string, double> dur;
    std::size_t moments = 0;
    for (const auto& g : e) {
      dur[g.vid] = g.duration;
      for (const auto& m : g.moments) by_vid[g.vid].push_back(m);
      moments += g.moments.size();
    }
    double covered = 0, total = 0;
    for (const auto& [v, spans] : by_vid) {
      covered += covered_cells(spans, dur[v]);
      total += dur[v];
    }
    ASSERT_EQ(s.num_moments, moments);
    ASSERT_EQ(s.num_videos, dur.size());
    ASSERT_EQ(s.total_moment_seconds, covered);
    ASSERT_EQ(s.total_video_seconds, total);
    ASSERT_GT(s.moment_video_ratio, 0.0);
    ASSERT_LE(s.moment_video_ratio, 1.0);

    std::size_t hist = 0, grid = 0;
    for (auto c : s.length_histogram) hist += c;
    for (auto c : s.location_grid.data()) grid += c;
    ASSERT_EQ(hist, moments);
    ASSERT_EQ(grid, moments);

    std::shuffle(e.begin(), e.end(), rng);
    ASSERT_EQ(compute_stats(e), s);
  }
}

TEST(StatsTest, ErrorsAndTables) {
  EXPECT_THROW(compute_stats(std::vector<GroundTruthEntry>{}), InvalidArgument);
  StatsOptions bad;
  bad.bin_width = 0;
  const std::vector<GroundTruthEntry> e{{1, "x", "v", 10, {{0, 3}}}};
  EXPECT_THROW(compute_stats(e, bad), InvalidArgument);

  StatsOptions o;
  o.grid_resolution = 2;
  const DatasetStats s = compute_stats(e, o);
  std::ostringstream hist, grid, words;
  write_length_histogram_tsv(hist, s);
  write_location_grid_tsv(grid, s);
  write_top_words_tsv(words, s);
  EXPECT_EQ(hist.str(), "bin_start\tbin_end\tcount\n0\t2\t0\n2\t4\t1\n");
  EXPECT_EQ(grid.str(),
            "start_lo\tend_lo\tcount\n0\t0\t1\n0\t0.5\t0\n0.5\t0\t0\n0.5\t0.5\t0\n");
  EXPECT_EQ(words.str(), "word\tcount\nx\t1\n");
}

TEST(StatsTest, ReadsLemmaTableAndWordList) {
  std::istringstream lt("# comment\nspeaks speak\n\nwearing wear # trailing\n");
  EXPECT_EQ(read_lemma_table(lt),
            (std::map<std::string, std::string>{{"speaks", "speak"},
                                                {"wearing", "wear"}}));
  std::istringstream bad("one two three\n");
  EXPECT_THROW(read_lemma_table(bad), InputError);
  std::istringstream wl("a an\nthe # x\n");
  EXPECT_EQ(read_word_list(wl), (std::vector<std::string>{"a", "an", "the"}));
}

}  // namespace
}  // namespace mmr
