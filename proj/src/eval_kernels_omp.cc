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

#include <omp.h>

#include <cstddef>

#include "mmr/eval_kernels.h"

namespace mmr {

std::vector<QueryScores> score_queries_parallel(
    std::span<const QueryInstance> dataset, const MetricConfig& config,
    int threads) {
  std::vector<QueryScores> out(dataset.size());
  const auto n = static_cast<std::ptrdiff_t>(dataset.size());
  const int num_threads = threads > 0 ? threads : omp_get_max_threads();
  // Each iteration owns out[i]; no reduction happens inside the region.
#pragma omp parallel for schedule(dynamic, 64) num_threads(num_threads)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        score_query(dataset[static_cast<std::size_t>(i)], config);
  }
  return out;
}

}  // namespace mmr
