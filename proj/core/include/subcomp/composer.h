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

#ifndef SUBCOMP_COMPOSER_H_
#define SUBCOMP_COMPOSER_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "subcomp/embedding_store.h"
#include "subcomp/lexicon.h"
#include "subcomp/types.h"

namespace subcomp {

/// Elementwise ways of combining two subword vectors.
enum class CompositionOp { Add, Multiply, AbsDiff };

std::string_view to_string(CompositionOp op);
/// Accepts "add", "multiply", "absdiff".
CompositionOp parse_composition_op(std::string_view name);

Vector compose(CompositionOp op, Vector const& u, Vector const& v);

/// Row-wise composition of two equally shaped matrices.
Matrix compose_rows(CompositionOp op, Matrix const& left, Matrix const& right);

struct ComposedBatch {
  Matrix rows;                    // n x d, row i belongs to words[i]
  std::vector<std::string> words;
  std::vector<Split> splits;      // split picked for each word
};

/// Composes the run's split of every entry from an isolated store.
ComposedBatch compose_batch(CompositionOp op, std::span<LexiconEntry const> entries,
                            EmbeddingStore const& store, int layer, std::uint64_t run_seed);

/// Sums the two position vectors of each entry's pair record.
ComposedBatch compose_contextual(std::span<LexiconEntry const> entries,
                                 EmbeddingStore const& pair_store, int layer,
                                 std::uint64_t run_seed);

/// Whole-word vectors for `entries`, promoted to float64.
Matrix whole_word_matrix(std::span<LexiconEntry const> entries, EmbeddingStore const& store,
                         int layer);

}  // namespace subcomp

#endif  // SUBCOMP_COMPOSER_H_
