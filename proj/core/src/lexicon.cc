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

#include "subcomp/lexicon.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "subcomp/errors.h"
#include "subcomp/log.h"
#include "subcomp/rng.h"
#include "subcomp/utf8.h"

namespace subcomp {
namespace {

bool has_whitespace(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
           c == '\f';
  });
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::ifstream open_input(std::filesystem::path const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

}  // namespace

std::string_view to_string(Category category) {
  return category == Category::Root ? "root" : "nonroot";
}

Category parse_category(std::string_view label) {
  if (label == "root") return Category::Root;
  if (label == "nonroot") return Category::NonRoot;
  throw ValidationError("unknown category label \"" + std::string(label) + "\"");
}

std::vector<RawLexiconRecord> parse_lexicon(std::istream& in) {
  std::vector<RawLexiconRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    auto const tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw ParseError("expected word<TAB>category", line_no);
    }
    std::string word = line.substr(0, tab);
    std::string_view const label = std::string_view(line).substr(tab + 1);
    if (word.empty()) throw ParseError("empty word", line_no);
    if (has_whitespace(word)) throw ParseError("word contains whitespace", line_no);
    if (!utf8::is_valid(word)) throw ParseError("word is not valid UTF-8", line_no);
    Category category;
    try {
      category = parse_category(label);
    } catch (ValidationError const& e) {
      throw ParseError(e.what(), line_no);
    }
    records.push_back({std::move(word), category});
  }
  return records;
}

std::vector<RawLexiconRecord> parse_lexicon(std::filesystem::path const& path) {
  auto in = open_input(path);
  return parse_lexicon(in);
}

Vocab::Vocab(std::string model_id, std::span<std::string const> tokens,
             std::optional<std::string> marker)
    : model_id_(std::move(model_id)), marker_(std::move(marker)) {
  if (marker_ && utf8::length(*marker_) != 1) {
    throw ValidationError("vocab marker must be a single codepoint");
  }
  for (auto const& token : tokens) {
    std::string normalized = normalize(token);
    if (!normalized.empty()) tokens_.insert(std::move(normalized));
  }
  if (tokens_.empty()) {
    throw ValidationError("vocabulary \"" + model_id_ + "\" has no tokens");
  }
}

Vocab Vocab::parse(std::istream& in, std::string model_id) {
  std::vector<std::string> tokens;
  std::optional<std::string> marker;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    strip_cr(line);
    if (first && line.rfind("#marker=", 0) == 0) {
      std::string_view const spec = std::string_view(line).substr(8);
      if (auto cp = utf8::parse_codepoint_notation(spec)) {
        marker = std::move(*cp);
      } else if (utf8::is_valid(spec) && utf8::length(spec) == 1) {
        marker = std::string(spec);
      } else {
        throw ParseError("bad marker header \"" + line + "\"", 1);
      }
      first = false;
      continue;
    }
    first = false;
    if (!line.empty()) tokens.push_back(std::move(line));
  }
  return Vocab(std::move(model_id), tokens, std::move(marker));
}

Vocab Vocab::load(std::filesystem::path const& path, std::string model_id) {
  auto in = open_input(path);
  return parse(in, std::move(model_id));
}

std::string Vocab::normalize(std::string_view token) const {
  if (marker_ && token.starts_with(*marker_)) token.remove_prefix(marker_->size());
  return std::string(token);
}

bool Vocab::contains(std::string_view token) const {
  return tokens_.count(normalize(token)) > 0;
}

std::vector<Split> enumerate_splits(std::string_view word,
                                    std::span<Vocab const> vocabs) {
  auto in_all = [&](std::string_view s) {
    return std::all_of(vocabs.begin(), vocabs.end(),
                       [&](Vocab const& v) { return v.contains(s); });
  };
  std::vector<Split> splits;
  if (word.empty() || !in_all(word)) return splits;
  auto const cuts = utf8::boundaries(word);
  // cuts.front() == 0 and cuts.back() == size; interior entries are cuts.
  for (std::size_t k = 1; k + 1 < cuts.size(); ++k) {
    std::string_view const left = word.substr(0, cuts[k]);
    std::string_view const right = word.substr(cuts[k]);
    if (in_all(left) && in_all(right)) {
      splits.push_back({std::string(left), std::string(right)});
    }
  }
  return splits;
}

DatasetSplit build_dataset(std::span<RawLexiconRecord const> records,
                           std::span<Vocab const> vocabs, double ratio,
                           std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw ValidationError("split ratio must lie in (0, 1)");
  }
  std::unordered_set<std::string> seen;
  std::vector<LexiconEntry> entries;
  for (auto const& record : records) {
    if (!seen.insert(record.word).second) {
      log_warning("duplicate lexicon word \"" + record.word +
                  "\"; keeping first occurrence");
      continue;
    }
    auto splits = enumerate_splits(record.word, vocabs);
    if (splits.empty()) continue;
    entries.push_back({record.word, record.category, utf8::length(record.word),
                       std::move(splits)});
  }
  if (entries.empty()) throw ValidationError("empty intersection");

  Rng rng(seed);
  rng.shuffle(std::span<LexiconEntry>(entries));

  std::size_t const n = entries.size();
  // Small slack so products such as 0.57 * 100 do not floor one short.
  auto n_train = static_cast<std::size_t>(
      std::floor(ratio * static_cast<double>(n) + 1e-9));
  n_train = std::clamp<std::size_t>(n_train, 1, n);

  DatasetSplit out;
  out.seed = seed;
  out.ratio = ratio;
  out.train.assign(std::make_move_iterator(entries.begin()),
                   std::make_move_iterator(entries.begin() + n_train));
  out.test.assign(std::make_move_iterator(entries.begin() + n_train),
                  std::make_move_iterator(entries.end()));
  return out;
}

Split const& pick_split_per_run(LexiconEntry const& entry, std::uint64_t run_seed) {
  if (entry.splits.empty()) {
    throw ValidationError("word \"" + entry.word + "\" has no splits");
  }
  if (entry.splits.size() == 1) return entry.splits.front();
  Rng rng(splitmix64(fnv1a64(entry.word) ^ splitmix64(run_seed)));
  return entry.splits[rng.uniform_index(entry.splits.size())];
}

namespace {

using nlohmann::json;

json entry_to_json(LexiconEntry const& e) {
  json splits = json::array();
  for (auto const& s : e.splits) splits.push_back(json::array({s.left, s.right}));
  return json{{"category", std::string(to_string(e.category))},
              {"length", e.length},
              {"splits", std::move(splits)},
              {"word", e.word}};
}

LexiconEntry entry_from_json(json const& j) {
  LexiconEntry e;
  e.word = j.at("word").get<std::string>();
  e.category = parse_category(j.at("category").get<std::string>());
  e.length = j.at("length").get<std::size_t>();
  for (auto const& s : j.at("splits")) {
    if (!s.is_array() || s.size() != 2) throw ValidationError("split must be [left, right]");
    e.splits.push_back({s[0].get<std::string>(), s[1].get<std::string>()});
  }
  if (e.word.empty() || e.splits.empty()) {
    throw ValidationError("dataset entry needs a word and at least one split");
  }
  if (e.length != utf8::length(e.word)) {
    throw ValidationError("length mismatch for \"" + e.word + "\"");
  }
  for (auto const& s : e.splits) {
    if (s.left + s.right != e.word) {
      throw ValidationError("split " + s.left + "|" + s.right + " does not concatenate to \"" +
                            e.word + "\"");
    }
  }
  return e;
}

}  // namespace

std::string dataset_to_json(DatasetSplit const& split) {
  json train = json::array();
  for (auto const& e : split.train) train.push_back(entry_to_json(e));
  json test = json::array();
  for (auto const& e : split.test) test.push_back(entry_to_json(e));
  json const doc{{"ratio", split.ratio},
                 {"seed", split.seed},
                 {"test", std::move(test)},
                 {"train", std::move(train)}};
  return doc.dump(2) + "\n";
}

DatasetSplit dataset_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (json::exception const& e) {
    throw ParseError(std::string("dataset JSON: ") + e.what(), 0);
  }
  DatasetSplit split;
  try {
    split.seed = doc.at("seed").get<std::uint64_t>();
    split.ratio = doc.at("ratio").get<double>();
    for (auto const& e : doc.at("train")) split.train.push_back(entry_from_json(e));
    for (auto const& e : doc.at("test")) split.test.push_back(entry_from_json(e));
  } catch (json::exception const& e) {
    throw ValidationError(std::string("dataset JSON: ") + e.what());
  }
  std::unordered_set<std::string> words;
  for (auto const* part : {&split.train, &split.test}) {
    for (auto const& e : *part) {
      if (!words.insert(e.word).second) {
        throw ValidationError("word \"" + e.word + "\" appears twice in dataset");
      }
    }
  }
  return split;
}

void write_dataset(DatasetSplit const& split, std::filesystem::path const& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << dataset_to_json(split);
  if (!out) throw IoError("write failed for " + path.string());
}

DatasetSplit read_dataset(std::filesystem::path const& path) {
  auto in = open_input(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return dataset_from_json(buf.str());
}

}  // namespace subcomp
