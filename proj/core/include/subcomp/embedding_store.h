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

#ifndef SUBCOMP_EMBEDDING_STORE_H_
#define SUBCOMP_EMBEDDING_STORE_H_

// On-disk per-layer embedding matrices.
//
// A store directory holds `manifest.json` and one raw little-endian float32
// row-major file per layer, `layer_%03d.bin`, with no header. Layer 0 is the
// embedding-table output, layers 1..L are transformer block outputs. Row i of
// every layer file belongs to manifest item i.
//
// Contextual pair stores hold one record per (left, right) subword pair and
// two files per layer, `layer_%03d.left.bin` and `layer_%03d.right.bin`.

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "subcomp/types.h"

namespace subcomp {

enum class StoreKind { Isolated, ContextualPair };

std::string_view to_string(StoreKind kind);

struct StoreManifest {
  std::string model_id;
  int num_layers = 0;  // L; files exist for layers 0..L
  int dim = 0;
  /// Row keys. Pair stores use `pair_key(left, right)`.
  std::vector<std::string> items;
  StoreKind kind = StoreKind::Isolated;
  /// Free-form extractor notes, e.g. the hidden-state convention.
  std::map<std::string, std::string> metadata;

  int layer_count() const noexcept { return num_layers + 1; }
};

std::string pair_key(std::string_view left, std::string_view right);

struct PairLayer {
  FloatMatrix left;
  FloatMatrix right;
};

struct PairVectors {
  FloatMatrix left;
  FloatMatrix right;
};

std::string layer_file_name(int layer);
std::string pair_layer_file_name(int layer, bool left);

/// Writes an isolated store. `layers` must hold exactly L+1 matrices of shape
/// |items| x dim with finite entries. Throws ValidationError otherwise.
void write_store(StoreManifest const& manifest, std::span<FloatMatrix const> layers,
                 std::filesystem::path const& dir);

void write_pair_store(StoreManifest const& manifest, std::span<PairLayer const> layers,
                      std::filesystem::path const& dir);

/// Read-only handle. Layers are read from disk on every request; the
/// handle itself holds only the manifest and the key index, so concurrent
/// readers are safe.
class EmbeddingStore {
 public:
  static EmbeddingStore open(std::filesystem::path const& dir);

  StoreManifest const& manifest() const noexcept { return manifest_; }
  std::filesystem::path const& path() const noexcept { return dir_; }
  StoreKind kind() const noexcept { return manifest_.kind; }
  int num_layers() const noexcept { return manifest_.num_layers; }
  int dim() const noexcept { return manifest_.dim; }

  bool contains(std::string_view key) const;
  bool contains_pair(std::string_view left, std::string_view right) const;

  /// Full layer matrix of an isolated store.
  FloatMatrix load_layer(int layer) const;
  PairLayer load_pair_layer(int layer) const;

  /// Rows for `keys`, in the order of `keys`. Throws MissingKeyError naming
  /// the first absent key, ValidationError for a bad layer index.
  FloatMatrix read_vectors(int layer, std::span<std::string const> keys) const;
  PairVectors read_pair_vectors(int layer, std::span<std::pair<std::string, std::string> const> pairs) const;

 private:
  EmbeddingStore() = default;

  void check_layer(int layer) const;
  std::size_t row_of(std::string const& key) const;
  FloatMatrix read_rows(std::filesystem::path const& file,
                        std::span<std::size_t const> rows) const;

  std::filesystem::path dir_;
  StoreManifest manifest_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct StoreReport {
  std::vector<std::string> findings;
  bool ok() const noexcept { return findings.empty(); }
};

/// Checks manifest consistency, layer file presence and sizes, stray layer
/// files and finiteness. Never throws for content problems.
StoreReport validate_store(std::filesystem::path const& dir);

/// Raw little-endian float32/float64 I/O shared with the map serializer.
void write_le(std::filesystem::path const& file, std::span<float const> values);
void write_le(std::filesystem::path const& file, std::span<double const> values);
std::vector<double> read_le_f64(std::filesystem::path const& file);

}  // namespace subcomp

#endif  // SUBCOMP_EMBEDDING_STORE_H_
