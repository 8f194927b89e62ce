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

#include "subcomp/synthetic.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <unordered_set>

#include "subcomp/errors.h"
#include "subcomp/rng.h"

namespace subcomp {
namespace {

constexpr std::string_view kRootLetters = "abcdefghijklmnop";
constexpr std::string_view kMarkerLetters = "xyz";

bool is_marker(char c) { return kMarkerLetters.find(c) != std::string_view::npos; }

std::string random_letters(Rng& rng, int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s += kRootLetters[rng.uniform_index(kRootLetters.size())];
  return s;
}

// Non-root words are a root-letter stem, one marker letter and a short tail.
std::string make_word(Rng& rng, int length, Category category) {
  if (category == Category::Root) return random_letters(rng, length);
  int const tail = static_cast<int>(rng.uniform_index(std::min(3, length - 2)));
  int const stem = length - 1 - tail;
  return random_letters(rng, stem) +
         kMarkerLetters[rng.uniform_index(kMarkerLetters.size())] + random_letters(rng, tail);
}

std::vector<int> pick_cuts(Rng& rng, int length) {
  double const u = rng.uniform01();
  int const want = std::min(length - 1, u < 0.7 ? 1 : (u < 0.9 ? 2 : 3));
  std::set<int> cuts;
  while (static_cast<int>(cuts.size()) < want) {
    cuts.insert(1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(length - 1))));
  }
  return {cuts.begin(), cuts.end()};
}

}  // namespace

SyntheticCorpus make_synthetic_corpus(SyntheticOptions const& o) {
  if (o.num_words < 2 || o.num_layers < 1 || o.dim < 3 || o.min_length < 3 ||
      o.max_length < o.min_length) {
    throw ValidationError("synthetic: invalid options");
  }
  Rng rng(o.seed);
  SyntheticCorpus corpus;

  std::set<std::string> anagram_keys;
  std::set<std::string> vocab;
  std::size_t attempts = 0;
  while (corpus.lexicon.size() < o.num_words) {
    if (++attempts > o.num_words * 1000) throw ValidationError("synthetic: cannot draw enough words");
    Category const category =
        rng.uniform01() < o.nonroot_fraction ? Category::NonRoot : Category::Root;
    int const length = o.min_length + static_cast<int>(rng.uniform_index(
                                          static_cast<std::uint64_t>(o.max_length - o.min_length + 1)));
    std::string word = make_word(rng, length, category);
    // Character-sum vectors cannot tell anagrams apart.
    std::string key = word;
    std::sort(key.begin(), key.end());
    if (!anagram_keys.insert(key).second) continue;
    vocab.insert(word);
    for (int cut : pick_cuts(rng, length)) {
      vocab.insert(word.substr(0, static_cast<std::size_t>(cut)));
      vocab.insert(word.substr(static_cast<std::size_t>(cut)));
    }
    corpus.lexicon.push_back({std::move(word), category});
  }
  corpus.vocab.assign(vocab.begin(), vocab.end());

  // Every split any vocabulary-based enumeration can find needs a pair record.
  Vocab const v("synthetic", corpus.vocab);
  std::vector<std::string> pair_items;
  std::vector<Split> pair_splits;
  for (auto const& record : corpus.lexicon) {
    for (auto& split : enumerate_splits(record.word, std::span<Vocab const>(&v, 1))) {
      pair_items.push_back(pair_key(split.left, split.right));
      pair_splits.push_back(std::move(split));
    }
  }

  corpus.manifest.model_id = o.model_id;
  corpus.manifest.num_layers = o.num_layers;
  corpus.manifest.dim = o.dim;
  corpus.manifest.items = corpus.vocab;
  corpus.manifest.kind = StoreKind::Isolated;
  corpus.manifest.metadata["generator"] = o.planted ? "synthetic:planted" : "synthetic:noise";
  corpus.pair_manifest = corpus.manifest;
  corpus.pair_manifest.kind = StoreKind::ContextualPair;
  corpus.pair_manifest.items = pair_items;

  auto const n_items = static_cast<Eigen::Index>(corpus.vocab.size());
  auto const n_pairs = static_cast<Eigen::Index>(pair_items.size());
  std::map<std::string, Eigen::Index> row_of;
  for (Eigen::Index i = 0; i < n_items; ++i) row_of[corpus.vocab[i]] = i;

  for (int layer = 0; layer <= o.num_layers; ++layer) {
    Matrix item_vectors(n_items, o.dim);
    if (o.planted) {
      std::string const alphabet = std::string(kRootLetters) + std::string(kMarkerLetters);
      Matrix noise(static_cast<Eigen::Index>(alphabet.size()), o.dim - 2);
      for (Eigen::Index i = 0; i < noise.rows(); ++i) {
        for (Eigen::Index k = 0; k < noise.cols(); ++k) noise(i, k) = o.noise_scale * rng.normal();
      }
      noise.rowwise() -= noise.colwise().mean();
      std::map<char, Vector> chars;
      for (std::size_t i = 0; i < alphabet.size(); ++i) {
        char const c = alphabet[i];
        Vector e(o.dim);
        e(0) = o.length_scale;
        e(1) = is_marker(c) ? o.category_scale : 0.0;
        e.tail(o.dim - 2) = noise.row(static_cast<Eigen::Index>(i)).transpose();
        chars[c] = std::move(e);
      }
      for (Eigen::Index i = 0; i < n_items; ++i) {
        Vector sum = Vector::Zero(o.dim);
        for (char c : corpus.vocab[i]) sum += chars.at(c);
        item_vectors.row(i) = sum.transpose();
      }
    } else {
      for (Eigen::Index i = 0; i < n_items; ++i) {
        for (int k = 0; k < o.dim; ++k) item_vectors(i, k) = o.noise_scale * rng.normal();
      }
    }
    corpus.layers.push_back(item_vectors.cast<float>());

    PairLayer pairs{FloatMatrix(n_pairs, o.dim), FloatMatrix(n_pairs, o.dim)};
    bool const diverged =
        o.contextual_divergence_layer >= 0 && layer >= o.contextual_divergence_layer;
    for (Eigen::Index p = 0; p < n_pairs; ++p) {
      Vector left = item_vectors.row(row_of.at(pair_splits[p].left)).transpose();
      Vector right = item_vectors.row(row_of.at(pair_splits[p].right)).transpose();
      if (diverged) {
        for (int k = 0; k < o.dim; ++k) {
          left(k) += o.contextual_noise * rng.normal();
          right(k) += o.contextual_noise * rng.normal();
        }
      }
      pairs.left.row(p) = left.transpose().cast<float>();
      pairs.right.row(p) = right.transpose().cast<float>();
    }
    corpus.pair_layers.push_back(std::move(pairs));
  }
  return corpus;
}

void write_synthetic_corpus(SyntheticCorpus const& corpus, std::filesystem::path const& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "lexicon.tsv", std::ios::binary | std::ios::trunc);
    for (auto const& r : corpus.lexicon) out << r.word << '\t' << to_string(r.category) << '\n';
    if (!out) throw IoError("cannot write lexicon.tsv");
  }
  {
    std::ofstream out(dir / "vocab.txt", std::ios::binary | std::ios::trunc);
    for (auto const& t : corpus.vocab) out << t << '\n';
    if (!out) throw IoError("cannot write vocab.txt");
  }
  write_store(corpus.manifest, corpus.layers, dir / "store");
  write_pair_store(corpus.pair_manifest, corpus.pair_layers, dir / "pairs");
}

}  // namespace subcomp
