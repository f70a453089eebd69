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

// Per-query scoring kernels behind evaluate().
//
// Scoring is embarrassingly parallel across queries. The OpenMP kernel
// writes each query's scores into its own slot and the reduction walks the
// slots in canonical order, so the report is bit-identical to the serial
// kernel for any thread count.

#ifndef MMR_EVAL_KERNELS_H_
#define MMR_EVAL_KERNELS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "mmr/metrics.h"

namespace mmr {

struct QueryScores {
  std::size_t num_gt = 0;
  std::vector<double> ap;    // per IoU threshold
  std::vector<double> miou;  // per k value
  // Recall fraction per (k, recall threshold), k-major.
  std::vector<double> recall;
};

QueryScores score_query(const QueryInstance& query,
                        const MetricConfig& config);

// Reference kernel: one query after another.
std::vector<QueryScores> score_queries_serial(
    std::span<const QueryInstance> dataset, const MetricConfig& config);

// OpenMP kernel. threads <= 0 uses the runtime default.
std::vector<QueryScores> score_queries_parallel(
    std::span<const QueryInstance> dataset, const MetricConfig& config,
    int threads);

// Folds per-query scores (in the given order) into a report. Counters
// that depend on the raw records are left at zero.
MetricReport reduce_scores(std::span<const QueryScores> scores,
                           const MetricConfig& config);

}  // namespace mmr

#endif  // MMR_EVAL_KERNELS_H_
