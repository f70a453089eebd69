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

#include "mmr/synth.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "mmr/error.h"

namespace mmr {

std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t CounterRng::next() {
  ++counter_;
  return splitmix64_mix(key_ + counter_ * 0x9e3779b97f4a7c15ULL);
}

double CounterRng::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::int64_t CounterRng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw InvalidArgument("empty integer range");
  const double span = static_cast<double>(hi - lo) + 1.0;
  const auto k = static_cast<std::int64_t>(std::floor(uniform() * span));
  return lo + std::min(k, hi - lo);
}

namespace {

bool power_of_two(double x) {
  int exp = 0;
  return x > 0.0 && std::isfinite(x) && std::frexp(x, &exp) == 0.5;
}

void check_prob(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgument(std::string(name) + " must lie in [0, 1]");
  }
}

// Config times in whole quanta.
struct Units {
  std::int64_t min_duration, max_duration, min_len, max_len, gap, jitter;
};

Units to_units(const SynthConfig& c) {
  const double q = c.time_quantum;
  return {static_cast<std::int64_t>(std::ceil(c.min_duration / q)),
          static_cast<std::int64_t>(std::floor(c.max_duration / q)),
          static_cast<std::int64_t>(std::ceil(c.min_moment_len / q)),
          static_cast<std::int64_t>(std::floor(c.max_moment_len / q)),
          static_cast<std::int64_t>(std::ceil(c.min_gap / q)),
          static_cast<std::int64_t>(std::floor(c.jitter / q))};
}

struct Span {
  std::int64_t lo, hi;
};

}  // namespace

void SynthConfig::validate() const {
  if (num_queries < 0) throw InvalidArgument("num_queries must be >= 0");
  if (!power_of_two(time_quantum)) {
    throw InvalidArgument("time_quantum must be a power of two");
  }
  for (double v : {min_duration, max_duration, min_moment_len,
                   max_moment_len, min_gap, jitter}) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InvalidArgument("synth times must be finite and non-negative");
    }
  }
  check_prob(drop_prob, "drop_prob");
  check_prob(spurious_prob, "spurious_prob");
  check_prob(score_margin, "score_margin");
  if (min_moments < 1 || max_moments < min_moments) {
    throw InvalidArgument("moment count range must satisfy 1 <= min <= max");
  }
  const Units u = to_units(*this);
  if (u.min_len < 1 || u.max_len < u.min_len) {
    throw InvalidArgument(
        "moment length range must be ordered and at least one quantum");
  }
  if (u.min_duration < 1 || u.max_duration < u.min_duration) {
    throw InvalidArgument("duration range must be ordered and positive");
  }
  const std::int64_t need =
      max_moments * u.min_len + (max_moments - 1) * u.gap;
  if (need > u.min_duration) {
    throw InvalidArgument(
        "infeasible packing: " + std::to_string(max_moments) +
        " moments do not fit in the shortest video");
  }
}

SynthFixture generate(const SynthConfig& config) {
  config.validate();
  const Units u = to_units(config);
  const double q = config.time_quantum;
  const double true_lo = 0.5 + config.score_margin / 2;
  const double spurious_hi = 0.5 - config.score_margin / 2;

  SynthFixture out;
  out.gt.reserve(static_cast<std::size_t>(config.num_queries));
  out.preds.reserve(static_cast<std::size_t>(config.num_queries));

  for (std::int64_t i = 0; i < config.num_queries; ++i) {
    const std::int64_t qid = config.first_qid + i;
    CounterRng rng(splitmix64_mix(
        config.seed ^ splitmix64_mix(static_cast<std::uint64_t>(qid))));

    // Draw order: duration, count, lengths, slack cuts, then per moment
    // (drop, start shift, end shift, score, spurious, and if spurious:
    // length, gap choice, offset, score).
    const std::int64_t dur = rng.uniform_int(u.min_duration, u.max_duration);
    const auto n = static_cast<int>(
        rng.uniform_int(config.min_moments, config.max_moments));

    std::vector<std::int64_t> lens(n);
    std::int64_t budget = dur - (n - 1) * u.gap;
    for (int m = 0; m < n; ++m) {
      const std::int64_t reserve = (n - 1 - m) * u.min_len;
      lens[m] = rng.uniform_int(u.min_len, std::min(u.max_len, budget - reserve));
      budget -= lens[m];
    }
    std::vector<std::int64_t> cuts(n);
    for (auto& c : cuts) c = rng.uniform_int(0, budget);
    std::sort(cuts.begin(), cuts.end());

    std::vector<Span> moments;
    std::int64_t pos = 0, prev_cut = 0;
    for (int m = 0; m < n; ++m) {
      pos += cuts[m] - prev_cut;
      prev_cut = cuts[m];
      moments.push_back({pos, pos + lens[m]});
      pos += lens[m] + u.gap;
    }

    GroundTruthEntry gt;
    gt.qid = qid;
    gt.query = "synthetic query " + std::to_string(qid);
    gt.vid = "synth_" + std::to_string(qid);
    gt.duration = static_cast<double>(dur) * q;
    for (const Span& s : moments) {
      gt.moments.emplace_back(static_cast<double>(s.lo) * q,
                              static_cast<double>(s.hi) * q);
    }

    std::vector<ScoredInterval> windows;
    std::vector<Span> occupied = moments;
    for (const Span& s : moments) {
      const bool dropped = rng.bernoulli(config.drop_prob);
      std::int64_t lo = s.lo + rng.uniform_int(-u.jitter, u.jitter);
      std::int64_t hi = s.hi + rng.uniform_int(-u.jitter, u.jitter);
      const double score = true_lo + rng.uniform() * (1.0 - true_lo);
      lo = std::clamp<std::int64_t>(lo, 0, dur);
      hi = std::clamp<std::int64_t>(hi, 0, dur);
      if (hi <= lo) {
        hi = std::min(lo + 1, dur);
        lo = hi - 1;
      }
      if (!dropped) {
        windows.emplace_back(static_cast<double>(lo) * q,
                             static_cast<double>(hi) * q, score);
      }

      if (!rng.bernoulli(config.spurious_prob)) continue;
      const std::int64_t len = rng.uniform_int(u.min_len, u.max_len);
      std::sort(occupied.begin(), occupied.end(),
                [](const Span& a, const Span& b) { return a.lo < b.lo; });
      std::vector<Span> fits;
      std::int64_t free_from = 0;
      for (std::size_t k = 0; k <= occupied.size(); ++k) {
        const std::int64_t free_to = k < occupied.size() ? occupied[k].lo : dur;
        if (free_to - free_from >= len) fits.push_back({free_from, free_to});
        if (k < occupied.size()) free_from = std::max(free_from, occupied[k].hi);
      }
      const std::int64_t last_fit =
          std::max<std::int64_t>(0, static_cast<std::int64_t>(fits.size()) - 1);
      const std::int64_t pick = rng.uniform_int(0, last_fit);
      const Span gap = fits.empty() ? Span{0, 0} : fits[pick];
      const std::int64_t off = rng.uniform_int(0, std::max<std::int64_t>(
                                                      0, gap.hi - gap.lo - len));
      const double spurious_score = rng.uniform() * spurious_hi;
      if (fits.empty()) continue;
      occupied.push_back({gap.lo + off, gap.lo + off + len});
      windows.emplace_back(static_cast<double>(gap.lo + off) * q,
                           static_cast<double>(gap.lo + off + len) * q,
                           spurious_score);
    }

    PredictionEntry pred;
    pred.qid = qid;
    pred.windows = ranked(windows);
    out.gt.push_back(std::move(gt));
    out.preds.push_back(std::move(pred));
  }
  return out;
}

}  // namespace mmr
