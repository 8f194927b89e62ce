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

#include "subcomp/retrieval.h"

#include <algorithm>
#include <numeric>
#include <string>

#include "subcomp/errors.h"
#include "subcomp/log.h"

namespace subcomp {

double precision_from_ranks(std::span<int const> ranks, int k) {
  if (ranks.empty()) return 0.0;
  auto const hits = std::count_if(ranks.begin(), ranks.end(), [k](int r) { return r <= k; });
  return static_cast<double>(hits) / static_cast<double>(ranks.size());
}

RetrievalResult precision_at_k(Matrix const& queries, Matrix const& candidates,
                               std::span<std::size_t const> targets,
                               std::span<int const> ks) {
  if (queries.cols() != candidates.cols()) {
    throw DimensionError("retrieval: queries have " + std::to_string(queries.cols()) +
                         " columns, candidates " + std::to_string(candidates.cols()));
  }
  if (static_cast<std::size_t>(queries.rows()) != targets.size()) {
    throw DimensionError("retrieval: one target per query required");
  }
  if (candidates.rows() == 0) throw DimensionError("retrieval: empty candidate set");
  auto const m = candidates.rows();
  for (auto t : targets) {
    if (t >= static_cast<std::size_t>(m)) throw DimensionError("retrieval: target out of range");
  }
  for (int k : ks) {
    if (k < 1) throw ValidationError("retrieval: k must be >= 1");
  }

  Vector const cand_norms = candidates.rowwise().norm();
  for (Eigen::Index j = 0; j < m; ++j) {
    if (!(cand_norms(j) > 0.0)) {
      throw ValidationError("retrieval: candidate row " + std::to_string(j) + " has zero norm");
    }
  }
  Matrix const cand_unit = cand_norms.cwiseInverse().asDiagonal() * candidates;

  Vector const query_norms = queries.rowwise().norm();
  RetrievalResult result;
  result.ranks.resize(targets.size());

  // Similarities are computed in row blocks to bound memory for large vocabularies.
  constexpr Eigen::Index kBlock = 256;
  for (Eigen::Index begin = 0; begin < queries.rows(); begin += kBlock) {
    Eigen::Index const rows = std::min(kBlock, queries.rows() - begin);
    Matrix const sims = queries.middleRows(begin, rows) * cand_unit.transpose();
    for (Eigen::Index r = 0; r < rows; ++r) {
      Eigen::Index const i = begin + r;
      if (!(query_norms(i) > 0.0)) {
        log_warning("retrieval: query row " + std::to_string(i) +
                    " has zero norm; scored as rank " + std::to_string(m));
        result.ranks[i] = static_cast<int>(m);
        continue;
      }
      // Dividing by the query norm would not change the ordering.
      auto const t = static_cast<Eigen::Index>(targets[i]);
      double const target_sim = sims(r, t);
      int ahead = 0;
      for (Eigen::Index j = 0; j < m; ++j) {
        double const s = sims(r, j);
        if (s > target_sim || (s == target_sim && j < t)) ++ahead;
      }
      result.ranks[i] = ahead + 1;
    }
  }

  result.p_at_1 = precision_from_ranks(result.ranks, 1);
  for (int k : ks) result.p_at_k[k] = precision_from_ranks(result.ranks, k);
  return result;
}

RetrievalResult precision_at_k(Matrix const& queries, Matrix const& candidates,
                               std::span<int const> ks) {
  std::vector<std::size_t> targets(static_cast<std::size_t>(queries.rows()));
  std::iota(targets.begin(), targets.end(), std::size_t{0});
  return precision_at_k(queries, candidates, targets, ks);
}

}  // namespace subcomp
