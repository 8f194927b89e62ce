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

#ifndef SUBCOMP_SYNTHETIC_H_
#define SUBCOMP_SYNTHETIC_H_

// Synthetic lexicon, vocabulary and embedding stores with known structure.
//
// In planted mode every item vector is the sum of per-character vectors, so
// the whole-word vector equals left + right for every two-way split. The
// character vectors carry two planted coordinates: coordinate 0 is
// `length_scale` for every character (the sum encodes word length) and
// coordinate 1 is `category_scale` for the marker characters that only
// non-root words contain (the sum encodes root vs non-root). The remaining
// coordinates are normal with standard deviation `noise_scale`, centered
// over the alphabet. Each layer draws fresh character vectors.
//
// The defaults keep both planted directions learnable by a zero-initialized
// probe within three epochs of Adam at lr 1e-3: the length weight only has
// to reach 1 / length_scale, and category_scale exceeds the largest length
// coordinate so the length direction cannot mask the category.
//
// In noise mode every item gets an independent standard normal vector.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "subcomp/embedding_store.h"
#include "subcomp/lexicon.h"

namespace subcomp {

struct SyntheticOptions {
  std::size_t num_words = 500;
  int num_layers = 2;
  int dim = 32;
  double nonroot_fraction = 0.325;
  int min_length = 3;
  int max_length = 14;
  double length_scale = 20.0;
  double category_scale = 400.0;
  double noise_scale = 0.1;
  bool planted = true;
  /// Pair-store vectors equal the isolated subword vectors below this layer
  /// and gain independent noise from it on. Negative: never diverge.
  int contextual_divergence_layer = -1;
  double contextual_noise = 1.0;
  std::uint64_t seed = 0;
  std::string model_id = "synthetic";
};

struct SyntheticCorpus {
  std::vector<RawLexiconRecord> lexicon;
  std::vector<std::string> vocab;
  StoreManifest manifest;
  std::vector<FloatMatrix> layers;
  StoreManifest pair_manifest;
  std::vector<PairLayer> pair_layers;
};

SyntheticCorpus make_synthetic_corpus(SyntheticOptions const& options);

/// Writes lexicon.tsv, vocab.txt, store/ and pairs/ under `dir`.
void write_synthetic_corpus(SyntheticCorpus const& corpus, std::filesystem::path const& dir);

}  // namespace subcomp

#endif  // SUBCOMP_SYNTHETIC_H_
