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

#ifndef SUBCOMP_LEXICON_H_
#define SUBCOMP_LEXICON_H_

// Parallel word/subword dataset construction.
//
// A morpheme lexicon (word + root/non-root label) is intersected with one or
// more tokenizer vocabularies. A word survives when the whole word and both
// halves of at least one two-way cut are vocabulary items in every
// vocabulary. Survivors are shuffled with a seed and split into train/test.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace subcomp {

enum class Category { Root, NonRoot };

std::string_view to_string(Category category);
Category parse_category(std::string_view label);

struct RawLexiconRecord {
  std::string word;
  Category category = Category::Root;

  friend bool operator==(RawLexiconRecord const&, RawLexiconRecord const&) = default;
};

/// Reads `word<TAB>root|nonroot` lines. Blank lines are skipped.
std::vector<RawLexiconRecord> parse_lexicon(std::istream& in);
std::vector<RawLexiconRecord> parse_lexicon(std::filesystem::path const& path);

/// A tokenizer vocabulary with word-initial marker normalization.
///
/// Tokens are stored with one leading marker scalar (if configured) removed,
/// so "▁limit" and "limit" both answer `contains("limit")`.
class Vocab {
 public:
  Vocab(std::string model_id, std::span<std::string const> tokens,
        std::optional<std::string> marker = std::nullopt);

  /// Reads one token per line. An optional first line `#marker=<cp>` sets the
  /// marker, given as `U+XXXX` or as the literal character.
  static Vocab load(std::filesystem::path const& path, std::string model_id);
  static Vocab parse(std::istream& in, std::string model_id);

  std::string const& model_id() const noexcept { return model_id_; }
  std::optional<std::string> const& marker() const noexcept { return marker_; }
  std::size_t size() const noexcept { return tokens_.size(); }

  bool contains(std::string_view token) const;
  std::string normalize(std::string_view token) const;

 private:
  std::string model_id_;
  std::optional<std::string> marker_;
  std::unordered_set<std::string> tokens_;
};

struct Split {
  std::string left;
  std::string right;

  friend bool operator==(Split const&, Split const&) = default;
  friend auto operator<=>(Split const&, Split const&) = default;
};

struct LexiconEntry {
  std::string word;
  Category category = Category::Root;
  std::size_t length = 0;  // Unicode scalar count of `word`
  std::vector<Split> splits;

  friend bool operator==(LexiconEntry const&, LexiconEntry const&) = default;
};

struct DatasetSplit {
  std::vector<LexiconEntry> train;
  std::vector<LexiconEntry> test;
  std::uint64_t seed = 0;
  double ratio = 0.8;
};

/// All two-way cuts of `word` whose halves, and the word itself, are in
/// every vocabulary. Cuts fall on scalar boundaries, in ascending order.
std::vector<Split> enumerate_splits(std::string_view word,
                                    std::span<Vocab const> vocabs);

/// Filters, shuffles and splits. The first floor(ratio * n) shuffled words go
/// to train (at least one). Duplicate words keep their first occurrence.
/// Throws ValidationError("empty intersection") when nothing survives.
DatasetSplit build_dataset(std::span<RawLexiconRecord const> records,
                           std::span<Vocab const> vocabs, double ratio,
                           std::uint64_t seed);

/// The split used for `entry` in the run seeded by `run_seed`.
Split const& pick_split_per_run(LexiconEntry const& entry, std::uint64_t run_seed);

std::string dataset_to_json(DatasetSplit const& split);
DatasetSplit dataset_from_json(std::string_view text);
void write_dataset(DatasetSplit const& split, std::filesystem::path const& path);
DatasetSplit read_dataset(std::filesystem::path const& path);

}  // namespace subcomp

#endif  // SUBCOMP_LEXICON_H_
