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

#include "mmr/postprocess.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "mmr/error.h"

namespace mmr {
namespace {

// Nearest lattice point by scanning the lattice; ties go to the larger one.
double lattice_round(double t, double g) {
  double best = 0.0;
  double best_dist = INFINITY;
  const long lo = static_cast<long>(t / g) - 3;
  for (long k = lo; k <= lo + 6; ++k) {
    const double cand = static_cast<double>(k) * g;
    const double d = std::fabs(t - cand);
    if (d <= best_dist) {
      best = cand;
      best_dist = d;
    }
  }
  return best;
}

// Step-by-step replay of the refinement definition using lattice_round.
std::pair<double, double> replay(double s, double e, double min_len,
                                 double max_len, double g, double dur) {
  auto clamp = [dur](double t) { return std::min(std::max(t, 0.0), dur); };
  if (s > e) std::swap(s, e);
  s = clamp(lattice_round(clamp(s), g));
  e = clamp(lattice_round(clamp(e), g));
  if (e - s < min_len) {
    const double mid = (s + e) / 2;
    s = mid - min_len / 2;
    e = mid + min_len / 2;
    if (s < 0) {
      e -= s;
      s = 0;
    }
    if (e > dur) {
      s -= e - dur;
      e = dur;
    }
  }
  if (e - s > max_len) {
    const double mid = (s + e) / 2;
    s = mid - max_len / 2;
    e = mid + max_len / 2;
  }
  return {clamp(lattice_round(s, g)), clamp(lattice_round(e, g))};
}

PostProcessConfig default_cfg(double duration) {
  return PostProcessConfig::for_clip_rate(0.5, duration);
}

TEST(PostprocessTest, DefaultsFollowClipRate) {
  const PostProcessConfig c = default_cfg(150);
  EXPECT_EQ(c.clip_rate, 0.5);
  EXPECT_EQ(c.round_granularity, 2.0);
  EXPECT_EQ(c.min_len, 2.0);
  EXPECT_EQ(c.effective_max_len(), 150.0);
}

TEST(PostprocessTest, ClampThenRound) {
  const std::vector<RawWindow> in{{-1.3, 11.2, 0.9}};
  const auto out = postprocess(in, default_cfg(150));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0], ScoredInterval(0.0, 12.0, 0.9));
  const auto [s, e] = replay(-1.3, 11.2, 2, 150, 2, 150);
  EXPECT_EQ(s, 0.0);
  EXPECT_EQ(e, 12.0);
}

TEST(PostprocessTest, OnGridIsFixedPoint) {
  const std::vector<RawWindow> in{{24, 40, 0.3}};
  EXPECT_EQ(postprocess(in, default_cfg(150))[0], ScoredInterval(24, 40, 0.3));
}

TEST(PostprocessTest, MinLengthGoldenTrace) {
  // round: [10, 10]; widen to 2 around 10: [9, 11]; re-round: [10, 12].
  const std::vector<RawWindow> in{{10, 10.4, 0.5}};
  EXPECT_EQ(postprocess(in, default_cfg(150))[0], ScoredInterval(10, 12, 0.5));
  const auto [s, e] = replay(10, 10.4, 2, 150, 2, 150);
  EXPECT_EQ(s, 10.0);
  EXPECT_EQ(e, 12.0);
}

TEST(PostprocessTest, SwapsReversedAndShiftsAtEdges) {
  PostProcessConfig c = default_cfg(30);
  c.min_len = 6;
  const std::vector<RawWindow> in{{8, 4, 0.1}, {0.2, 0.4, 0.2}, {29.5, 30, 0.3}};
  const auto out = postprocess(in, c);
  // [4, 8] widened to [3, 9], re-rounded half up.
  EXPECT_EQ(out[0], ScoredInterval(4, 10, 0.1));
  EXPECT_EQ(out[1], ScoredInterval(0, 6, 0.2));
  EXPECT_EQ(out[2], ScoredInterval(24, 30, 0.3));
}

TEST(PostprocessTest, MaxLengthShrinks) {
  PostProcessConfig c = default_cfg(150);
  c.max_len = 10;
  const std::vector<RawWindow> in{{0, 40, 0.9}};
  // mid 20 -> [15, 25] -> half-up rounding -> [16, 26]
  EXPECT_EQ(postprocess(in, c)[0], ScoredInterval(16, 26, 0.9));
}

TEST(PostprocessTest, ConfigErrors) {
  PostProcessConfig c = default_cfg(150);
  c.clamp_to = 0;
  EXPECT_THROW(postprocess({}, c), InvalidArgument);
  c = default_cfg(150);
  c.round_granularity = 0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = default_cfg(150);
  c.max_len = 1;
  EXPECT_THROW(c.validate(), InvalidArgument);
  const std::vector<RawWindow> bad{{0, NAN, 1}};
  EXPECT_THROW(postprocess(bad, default_cfg(150)), InvalidArgument);
}

TEST(PostprocessTest, VideoShorterThanMinLength) {
  const PostProcessConfig c = default_cfg(1.5);
  EXPECT_NO_THROW(c.validate());
  const std::vector<RawWindow> in{{0.2, 0.4, 0.7}};
  EXPECT_EQ(postprocess(in, c)[0], ScoredInterval(0, 1.5, 0.7));
}

TEST(PostprocessTest, RoundingMatchesLatticeSearch) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(-20, 200);
  for (double g : {2.0, 1.0, 0.5, 0.25}) {
    for (int i = 0; i < 5000; ++i) {
      const double t = u(rng);
      ASSERT_EQ(round_to_grid(t, g), lattice_round(t, g)) << t << " " << g;
    }
    ASSERT_EQ(round_to_grid(3.0, 2.0), 4.0);  // half up
    ASSERT_EQ(round_to_grid(1.0, 2.0), 2.0);
  }
}

TEST(PostprocessTest, MatchesReplayOnRandomWindows) {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> u(-30, 180);
  for (int i = 0; i < 5000; ++i) {
    PostProcessConfig c = default_cfg(150);
    c.min_len = 2.0 * static_cast<double>(1 + rng() % 4);
    if (rng() % 2) c.max_len = c.min_len + 4.0 * static_cast<double>(rng() % 10);
    const RawWindow w{u(rng), u(rng), 0.5};
    const ScoredInterval got = refine_window(w, c);
    const auto [s, e] =
        replay(w.start, w.end, c.min_len, c.effective_max_len(), 2.0, 150);
    ASSERT_EQ(got.start(), s);
    ASSERT_EQ(got.end(), e);
  }
}

TEST(ClipIndexRangeTest, Examples) {
  EXPECT_EQ(clip_index_range({0, 10}, 0.5, 75), (ClipRange{0, 5}));
  EXPECT_EQ(clip_index_range({0, 2}, 0.5, 75), (ClipRange{0, 1}));
  EXPECT_EQ(clip_index_range({149, 150}, 0.5, 75), (ClipRange{74, 75}));
}

TEST(ClipIndexRangeTest, DegenerateAndOutOfGrid) {
  EXPECT_EQ(clip_index_range({4, 4}, 0.5, 75), (ClipRange{2, 3}));
  EXPECT_EQ(clip_index_range({140, 170}, 0.5, 75), (ClipRange{70, 75}));
  EXPECT_THROW(clip_index_range({150, 150}, 0.5, 75), InvalidArgument);
  EXPECT_THROW(clip_index_range({0, 1}, 0.5, 0), InvalidArgument);
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(0, 149.9);
  for (int i = 0; i < 2000; ++i) {
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    const ClipRange r = clip_index_range({a, b}, 0.5, 75);
    ASSERT_GE(r.hi - r.lo, 1);
    ASSERT_GE(r.lo, 0);
    ASSERT_LE(r.hi, 75);
  }
}

TEST(BlendScoresTest, Examples) {
  const std::vector<double> a{0.2, 0.8}, b{0.6, 0.4};
  EXPECT_EQ(blend_scores(a, b, 1.0), a);
  EXPECT_EQ(blend_scores(a, b, 0.0), b);
  const auto mid = blend_scores(a, b, 0.5);
  EXPECT_DOUBLE_EQ(mid[0], 0.4);
  EXPECT_DOUBLE_EQ(mid[1], 0.6);
  const std::vector<double> short_b{0.1};
  EXPECT_THROW(blend_scores(a, short_b, 0.5), InvalidArgument);
  EXPECT_THROW(blend_scores(a, b, 1.5), InvalidArgument);
}

TEST(RerankTest, Examples) {
  const std::vector<ScoredInterval> preds{{0, 10, 0.9}, {20, 30, 0.5}};
  const std::vector<double> p{0.1, 0.9};
  EXPECT_EQ(rerank_with_verification(preds, p, 0.0), preds);

  const auto swapped = rerank_with_verification(preds, p, 0.5);
  ASSERT_EQ(swapped.size(), 2u);
  EXPECT_EQ(swapped[0].start(), 20.0);
  EXPECT_DOUBLE_EQ(swapped[0].score(), 0.7);
  EXPECT_DOUBLE_EQ(swapped[1].score(), 0.5);

  const auto by_p = rerank_with_verification(preds, p, 1.0);
  EXPECT_EQ(by_p[0].score(), 0.9);
  EXPECT_EQ(by_p[1].score(), 0.1);

  const std::vector<double> wrong{0.1};
  EXPECT_THROW(rerank_with_verification(preds, wrong), InvalidArgument);
}

TEST(RerankTest, WeightOneOrdersByVerificationScore) {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<ScoredInterval> preds;
    std::vector<double> p;
    for (int i = 0; i < 8; ++i) {
      preds.emplace_back(i * 10.0, i * 10.0 + 5, u(rng));
      p.push_back(u(rng));
    }
    const auto out = rerank_with_verification(preds, p, 1.0);
    for (std::size_t i = 1; i < out.size(); ++i) {
      ASSERT_GE(out[i - 1].score(), out[i].score());
    }
    const auto same = rerank_with_verification(preds, p, 0.0);
    EXPECT_EQ(same, ranked(preds));
  }
}

}  // namespace
}  // namespace mmr
