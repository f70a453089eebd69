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

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "mmr/error.h"

namespace mmr {

std::vector<std::string> StatsOptions::default_stop_words() {
  // The usual English list from NLTK, which also covers the fragments left
  // by splitting contractions ("s", "t", "ll", ...).
  return {
      "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you",
      "your", "yours", "yourself", "yourselves", "he", "him", "his",
      "himself", "she", "her", "hers", "herself", "it", "its", "itself",
      "they", "them", "their", "theirs", "themselves", "what", "which", "who",
      "whom", "this", "that", "these", "those", "am", "is", "are", "was",
      "were", "be", "been", "being", "have", "has", "had", "having", "do",
      "does", "did", "doing", "a", "an", "the", "and", "but", "if", "or",
      "because", "as", "until", "while", "of", "at", "by", "for", "with",
      "about", "against", "between", "into", "through", "during", "before",
      "after", "above", "below", "to", "from", "up", "down", "in", "out",
      "on", "off", "over", "under", "again", "further", "then", "once",
      "here", "there", "when", "where", "why", "how", "all", "any", "both",
      "each", "few", "more", "most", "other", "some", "such", "no", "nor",
      "not", "only", "own", "same", "so", "than", "too", "very", "s", "t",
      "can", "will", "just", "don", "should", "now", "d", "ll", "m", "o",
      "re", "ve", "y"};
}

void StatsOptions::validate() const {
  if (!(bin_width > 0.0) || !std::isfinite(bin_width)) {
    throw InvalidArgument("bin_width must be positive");
  }
  if (grid_resolution < 1) {
    throw InvalidArgument("grid_resolution must be at least 1");
  }
  if (!(long_moment_seconds >= 0.0)) {
    throw InvalidArgument("long moment threshold must be non-negative");
  }
}

std::vector<std::string> word_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (const char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (c >= 0x80 || std::isalnum(c)) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

namespace {

std::size_t whitespace_token_count(const std::string& text) {
  std::istringstream in(text);
  std::size_t n = 0;
  for (std::string w; in >> w;) ++n;
  return n;
}

std::size_t grid_cell(double frac, int res) {
  const double cell = std::floor(frac * res);
  return static_cast<std::size_t>(
      std::clamp(cell, 0.0, static_cast<double>(res - 1)));
}

}  // namespace

DatasetStats compute_stats(std::span<const GroundTruthEntry> entries,
                           const StatsOptions& options) {
  options.validate();
  if (entries.empty()) throw InvalidArgument("no annotation entries");

  // Canonical order so floating-point sums ignore input order.
  std::vector<const GroundTruthEntry*> sorted;
  sorted.reserve(entries.size());
  for (const auto& e : entries) sorted.push_back(&e);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const GroundTruthEntry* a, const GroundTruthEntry* b) {
                     return a->qid < b->qid;
                   });

  const std::set<std::string> stop(options.stop_words.begin(),
                                   options.stop_words.end());
  const int res = options.grid_resolution;

  DatasetStats s;
  s.bin_width = options.bin_width;
  s.long_moment_seconds = options.long_moment_seconds;
  s.location_grid = Matrix<std::size_t>(res, res, 0);

  std::map<std::string, double> durations;
  std::map<std::string, std::vector<Interval>> covered;
  std::unordered_map<std::string, std::size_t> words;
  std::size_t tokens = 0;

  for (const GroundTruthEntry* e : sorted) {
    ++s.num_queries;
    s.num_moments += e->moments.size();
    ++s.moments_per_query[e->moments.size()];
    tokens += whitespace_token_count(e->query);

    auto [it, fresh] = durations.emplace(e->vid, e->duration);
    if (!fresh) it->second = std::max(it->second, e->duration);
    auto& spans = covered[e->vid];

    bool has_long = false;
    for (const Interval& m : e->moments) {
      spans.push_back(m);
      const auto bin =
          static_cast<std::size_t>(std::floor(m.length() / options.bin_width));
      if (bin >= s.length_histogram.size()) s.length_histogram.resize(bin + 1);
      ++s.length_histogram[bin];
      s.location_grid(grid_cell(m.start() / e->duration, res),
                      grid_cell(m.end() / e->duration, res)) += 1;
      if (m.length() > options.long_moment_seconds) {
        ++s.long_moments;
        has_long = true;
      }
    }
    if (has_long) ++s.queries_with_long_moment;

    for (std::string& w : word_tokens(e->query)) {
      if (stop.count(w)) continue;
      const auto lemma = options.lemmas.find(w);
      ++words[lemma == options.lemmas.end() ? w : lemma->second];
    }
  }

  s.num_videos = durations.size();
  for (const auto& [vid, d] : durations) {
    s.total_video_seconds += d;
    for (const Interval& c : coalesce(covered[vid])) {
      s.total_moment_seconds += std::min(c.end(), d) - c.start();
    }
  }
  s.moment_video_ratio = s.total_moment_seconds / s.total_video_seconds;

  const auto nq = static_cast<double>(s.num_queries);
  s.avg_moments_per_query = static_cast<double>(s.num_moments) / nq;
  s.avg_query_len_tokens = static_cast<double>(tokens) / nq;
  s.long_moment_fraction =
      static_cast<double>(s.long_moments) / static_cast<double>(s.num_moments);
  s.long_moment_query_fraction =
      static_cast<double>(s.queries_with_long_moment) / nq;

  s.top_words.assign(words.begin(), words.end());
  std::sort(s.top_words.begin(), s.top_words.end(),
            [](const auto& a, const auto& b) {
              return a.second != b.second ? a.second > b.second
                                          : a.first < b.first;
            });
  if (s.top_words.size() > options.top_k_words) {
    s.top_words.resize(options.top_k_words);
  }
  return s;
}

void write_length_histogram_tsv(std::ostream& out, const DatasetStats& s) {
  out << "bin_start\tbin_end\tcount\n";
  for (std::size_t i = 0; i < s.length_histogram.size(); ++i) {
    out << static_cast<double>(i) * s.bin_width << '\t'
        << static_cast<double>(i + 1) * s.bin_width << '\t'
        << s.length_histogram[i] << '\n';
  }
}

void write_location_grid_tsv(std::ostream& out, const DatasetStats& s) {
  const auto& g = s.location_grid;
  out << "start_lo\tend_lo\tcount\n";
  const double cell = 1.0 / static_cast<double>(g.rows());
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = 0; j < g.cols(); ++j) {
      out << static_cast<double>(i) * cell << '\t'
          << static_cast<double>(j) * cell << '\t' << g(i, j) << '\n';
    }
  }
}

void write_top_words_tsv(std::ostream& out, const DatasetStats& s) {
  out << "word\tcount\n";
  for (const auto& [w, n] : s.top_words) out << w << '\t' << n << '\n';
}

std::map<std::string, std::string> read_lemma_table(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    std::istringstream fields(line);
    std::string surface, lemma, extra;
    if (!(fields >> surface)) continue;
    if (!(fields >> lemma) || (fields >> extra)) {
      throw InputError("lemma table", n, "", "expected 'surface lemma'");
    }
    out[surface] = lemma;
  }
  return out;
}

std::vector<std::string> read_word_list(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    std::istringstream fields(line);
    for (std::string w; fields >> w;) out.push_back(w);
  }
  return out;
}

}  // namespace mmr
