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

// Seeded synthetic fixtures: multi-moment annotations with predictions
// derived from them by jitter, drops and spurious windows.
//
// Randomness comes from a counter-based SplitMix64 so that any language can
// reproduce the files bit for bit:
//
//   mix(z):  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
//            z = (z ^ (z >> 27)) * 0x94d049bb133111eb
//            return z ^ (z >> 31)                      (all mod 2^64)
//   draw n of stream `key`:  mix(key + (n + 1) * 0x9e3779b97f4a7c15)
//   uniform in [0, 1):       (draw >> 11) * 2^-53
//   integer in [lo, hi]:     lo + floor(uniform * (hi - lo + 1))
//   query q stream key:      mix(seed ^ mix(q))
//
// All times are multiples of `time_quantum`, a power of two, so scaled
// copies stay exactly representable.

#ifndef MMR_SYNTH_H_
#define MMR_SYNTH_H_

#include <cstdint>
#include <vector>

#include "mmr/records.h"

namespace mmr {

std::uint64_t splitmix64_mix(std::uint64_t z);

// Stateless-per-draw stream: the n-th value depends only on (key, n).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t next();
  double uniform();                                   // [0, 1)
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);  // [lo, hi]
  bool bernoulli(double p) { return uniform() < p; }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

struct SynthConfig {
  std::uint64_t seed = 42;
  std::int64_t num_queries = 100;
  std::int64_t first_qid = 1;
  double min_duration = 60.0;
  double max_duration = 150.0;
  int min_moments = 1;               // per query, uniform in [min, max]
  int max_moments = 6;
  double min_moment_len = 2.0;
  double max_moment_len = 20.0;
  double min_gap = 2.0;              // between moments of one query
  double time_quantum = 0.5;         // seconds, power of two
  double jitter = 0.0;               // max endpoint shift, seconds
  double drop_prob = 0.0;            // per GT moment
  double spurious_prob = 0.0;        // per GT moment, one extra window
  double score_margin = 0.2;         // true scores >= spurious + margin

  // Throws InvalidArgument, including when max_moments moments of
  // min_moment_len with min_gap gaps cannot fit in min_duration.
  void validate() const;
};

struct SynthFixture {
  std::vector<GroundTruthEntry> gt;
  std::vector<PredictionEntry> preds;  // ranked, one record per query
};

// True-match scores are uniform in [0.5 + margin/2, 1), spurious ones in
// [0, 0.5 - margin/2). Spurious windows avoid every GT moment.
SynthFixture generate(const SynthConfig& config);

}  // namespace mmr

#endif  // MMR_SYNTH_H_
