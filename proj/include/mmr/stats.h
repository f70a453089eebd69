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

// Summary statistics of an annotation file: counts, moment length and
// location distributions, and query word frequencies.

#ifndef MMR_STATS_H_
#define MMR_STATS_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mmr/matrix.h"
#include "mmr/records.h"

namespace mmr {

struct StatsOptions {
  double bin_width = 2.0;          // seconds, moment length histogram
  int grid_resolution = 10;        // cells per axis of the location grid
  std::size_t top_k_words = 10;
  double long_moment_seconds = 20.0;  // "long" is strictly longer
  std::vector<std::string> stop_words = default_stop_words();
  std::map<std::string, std::string> lemmas;  // surface -> lemma; empty: off

  static std::vector<std::string> default_stop_words();
  void validate() const;
};

struct DatasetStats {
  std::size_t num_queries = 0;
  std::size_t num_videos = 0;
  std::size_t num_moments = 0;
  double avg_moments_per_query = 0.0;
  double avg_query_len_tokens = 0.0;  // whitespace tokens

  // Covered moment time per video (moments of all its queries coalesced)
  // over video time, each vid counted once.
  double total_moment_seconds = 0.0;
  double total_video_seconds = 0.0;
  double moment_video_ratio = 0.0;

  double bin_width = 0.0;
  std::vector<std::size_t> length_histogram;  // bin i: [i*w, (i+1)*w)

  // Cell (i, j) counts moments with start/duration in row i and
  // end/duration in column j; 1.0 falls in the last cell.
  Matrix<std::size_t> location_grid;

  std::map<std::size_t, std::size_t> moments_per_query;  // count -> queries

  std::vector<std::pair<std::string, std::size_t>> top_words;

  double long_moment_seconds = 0.0;
  std::size_t long_moments = 0;
  double long_moment_fraction = 0.0;          // of all moments
  std::size_t queries_with_long_moment = 0;
  double long_moment_query_fraction = 0.0;    // of all queries

  friend bool operator==(const DatasetStats&, const DatasetStats&) = default;
};

// Lowercase, split on whitespace and ASCII punctuation. Bytes >= 0x80 are
// kept as word characters.
std::vector<std::string> word_tokens(const std::string& text);

// Result does not depend on entry order. Throws InvalidArgument for an
// empty input. A vid listed with different durations uses the largest.
DatasetStats compute_stats(std::span<const GroundTruthEntry> entries,
                           const StatsOptions& options = {});

// Tab-separated tables with a header row, for external plotting.
void write_length_histogram_tsv(std::ostream& out, const DatasetStats& s);
void write_location_grid_tsv(std::ostream& out, const DatasetStats& s);
void write_top_words_tsv(std::ostream& out, const DatasetStats& s);

// Whitespace-separated "surface lemma" pairs, one per line; '#' comments.
std::map<std::string, std::string> read_lemma_table(std::istream& in);
std::vector<std::string> read_word_list(std::istream& in);

}  // namespace mmr

#endif  // MMR_STATS_H_
