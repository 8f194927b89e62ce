// Copyright 2026 The subcomp Authors
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

#ifndef SUBCOMP_RETRIEVAL_H_
#define SUBCOMP_RETRIEVAL_H_

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "subcomp/types.h"

namespace subcomp {

struct RetrievalResult {
  double p_at_1 = 0.0;
  std::map<int, double> p_at_k;
  std::vector<int> ranks;  // 1-based rank of each query's target
};

/// Exact cosine nearest-neighbour retrieval scored as Precision@k.
///
/// Query i's target is candidate `targets[i]`. Its rank is one plus the
/// number of candidates that score strictly higher, plus those that tie and
/// have a lower index. Candidate rows must be non-zero. A zero query row
/// cannot be scored; it gets rank = number of candidates and a warning.
RetrievalResult precision_at_k(Matrix const& queries, Matrix const& candidates,
                               std::span<std::size_t const> targets,
                               std::span<int const> ks);

/// Parallel-rows form: the target of query i is candidate i.
RetrievalResult precision_at_k(Matrix const& queries, Matrix const& candidates,
                               std::span<int const> ks);

/// Fraction of `ranks` that are <= k.
double precision_from_ranks(std::span<int const> ranks, int k);

}  // namespace subcomp

#endif  // SUBCOMP_RETRIEVAL_H_
