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

#include "subcomp/composer.h"

#include "subcomp/errors.h"

namespace subcomp {

std::string_view to_string(CompositionOp op) {
  switch (op) {
    case CompositionOp::Add:
      return "add";
    case CompositionOp::Multiply:
      return "multiply";
    case CompositionOp::AbsDiff:
      return "absdiff";
  }
  return "?";
}

CompositionOp parse_composition_op(std::string_view name) {
  if (name == "add") return CompositionOp::Add;
  if (name == "multiply") return CompositionOp::Multiply;
  if (name == "absdiff") return CompositionOp::AbsDiff;
  throw ValidationError("unknown composition op \"" + std::string(name) + "\"");
}

Matrix compose_rows(CompositionOp op, Matrix const& left, Matrix const& right) {
  if (left.rows() != right.rows() || left.cols() != right.cols()) {
    throw DimensionError("compose: operand shapes differ (" + std::to_string(left.rows()) +
                         "x" + std::to_string(left.cols()) + " vs " +
                         std::to_string(right.rows()) + "x" + std::to_string(right.cols()) +
                         ")");
  }
  if (!left.allFinite() || !right.allFinite()) {
    throw ValidationError("compose: non-finite operand");
  }
  switch (op) {
    case CompositionOp::Add:
      return left + right;
    case CompositionOp::Multiply:
      return left.cwiseProduct(right);
    case CompositionOp::AbsDiff:
      return (left - right).cwiseAbs();
  }
  return {};
}

Vector compose(CompositionOp op, Vector const& u, Vector const& v) {
  if (u.size() != v.size()) {
    throw DimensionError("compose: vector sizes differ (" + std::to_string(u.size()) +
                         " vs " + std::to_string(v.size()) + ")");
  }
  return compose_rows(op, Matrix(u.transpose()), Matrix(v.transpose())).row(0).transpose();
}

namespace {

std::string describe(LexiconEntry const& e, Split const& s) {
  return "word \"" + e.word + "\" split (" + s.left + ", " + s.right + ")";
}

}  // namespace

ComposedBatch compose_batch(CompositionOp op, std::span<LexiconEntry const> entries,
                            EmbeddingStore const& store, int layer, std::uint64_t run_seed) {
  if (store.kind() != StoreKind::Isolated) {
    throw ValidationError("compose_batch needs an isolated store");
  }
  ComposedBatch batch;
  std::vector<std::string> lefts, rights;
  for (auto const& entry : entries) {
    Split const& split = pick_split_per_run(entry, run_seed);
    for (auto const* half : {&split.left, &split.right}) {
      if (!store.contains(*half)) {
        throw MissingKeyError(*half, "missing subword vector for " + describe(entry, split));
      }
    }
    batch.words.push_back(entry.word);
    batch.splits.push_back(split);
    lefts.push_back(split.left);
    rights.push_back(split.right);
  }
  Matrix const left = store.read_vectors(layer, lefts).cast<double>();
  Matrix const right = store.read_vectors(layer, rights).cast<double>();
  batch.rows = compose_rows(op, left, right);
  return batch;
}

ComposedBatch compose_contextual(std::span<LexiconEntry const> entries,
                                 EmbeddingStore const& pair_store, int layer,
                                 std::uint64_t run_seed) {
  if (pair_store.kind() != StoreKind::ContextualPair) {
    throw ValidationError("compose_contextual needs a contextual_pair store");
  }
  ComposedBatch batch;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (auto const& entry : entries) {
    Split const& split = pick_split_per_run(entry, run_seed);
    if (!pair_store.contains_pair(split.left, split.right)) {
      throw MissingKeyError(pair_key(split.left, split.right),
                            "missing pair record for " + describe(entry, split));
    }
    batch.words.push_back(entry.word);
    batch.splits.push_back(split);
    pairs.emplace_back(split.left, split.right);
  }
  auto const vectors = pair_store.read_pair_vectors(layer, pairs);
  batch.rows = compose_rows(CompositionOp::Add, vectors.left.cast<double>(),
                            vectors.right.cast<double>());
  return batch;
}

Matrix whole_word_matrix(std::span<LexiconEntry const> entries, EmbeddingStore const& store,
                         int layer) {
  std::vector<std::string> words;
  words.reserve(entries.size());
  for (auto const& e : entries) words.push_back(e.word);
  return store.read_vectors(layer, words).cast<double>();
}

}  // namespace subcomp
