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
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "subcomp/errors.h"
#include "subcomp/log.h"
#include "subcomp/utf8.h"
#include "testing/oracles.h"

namespace subcomp {
namespace {

std::vector<RawLexiconRecord> parse(std::string const& text) {
  std::istringstream in(text);
  return parse_lexicon(in);
}

Vocab vocab(std::vector<std::string> tokens, std::string id = "m") {
  return Vocab(std::move(id), tokens);
}

TEST(ParseLexicon, RootAndNonRootLines) {
  auto const records = parse("dog\troot\nprepared\tnonroot\n");
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0], (RawLexiconRecord{"dog", Category::Root}));
  EXPECT_EQ(records[1], (RawLexiconRecord{"prepared", Category::NonRoot}));
}

TEST(ParseLexicon, EmptyInputGivesNoRecords) { EXPECT_TRUE(parse("").empty()); }

TEST(ParseLexicon, ToleratesCrLfAndBlankLines) {
  auto const records = parse("dog\troot\r\n\r\nhotpot\tnonroot\r\n");
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[1].word, "hotpot");
}

TEST(ParseLexicon, MalformedLineNamesLineNumber) {
  try {
    parse("dog\troot\nbroken line\n");
    FAIL() << "expected ParseError";
  } catch (ParseError const& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(ParseLexicon, UnknownCategoryIsAnError) {
  try {
    parse("dog\troot\ncats\tplural\n");
    FAIL() << "expected ParseError";
  } catch (ParseError const& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("plural"), std::string::npos);
  }
}

TEST(ParseLexicon, RejectsWhitespaceInWordAndEmptyWord) {
  EXPECT_THROW(parse("two words\troot\n"), ParseError);
  EXPECT_THROW(parse("\troot\n"), ParseError);
  EXPECT_THROW(parse("a\tb\troot\n"), ParseError);
}

TEST(VocabFile, MarkerHeaderInCodepointNotation) {
  std::istringstream in("#marker=U+2581\n\xE2\x96\x81limit\nli\nmit\n");
  auto const v = Vocab::parse(in, "llama");
  EXPECT_EQ(v.marker(), std::optional<std::string>("\xE2\x96\x81"));
  EXPECT_TRUE(v.contains("limit"));
  EXPECT_TRUE(v.contains("\xE2\x96\x81limit"));
  EXPECT_TRUE(v.contains("li"));
  EXPECT_FALSE(v.contains("lim"));
}

TEST(VocabFile, LiteralMarkerAndOnlyOneMarkerStripped) {
  std::istringstream in("#marker=\xC4\xA0\n\xC4\xA0\xC4\xA0x\ny\n");
  auto const v = Vocab::parse(in, "gpt");
  // Stored with one marker left; a query is normalized the same way.
  EXPECT_TRUE(v.contains("\xC4\xA0\xC4\xA0x"));
  EXPECT_FALSE(v.contains("x"));
  EXPECT_TRUE(v.contains("y"));
}

TEST(VocabFile, NoHeaderMeansNoNormalization) {
  std::istringstream in("\xE2\x96\x81limit\n");
  auto const v = Vocab::parse(in, "m");
  EXPECT_FALSE(v.contains("limit"));
}

TEST(VocabFile, EmptyVocabularyRejected) {
  std::istringstream in("#marker=U+2581\n");
  EXPECT_THROW(Vocab::parse(in, "m"), ValidationError);
  std::istringstream bad("#marker=ab\nx\n");
  EXPECT_THROW(Vocab::parse(bad, "m"), ParseError);
}

TEST(EnumerateSplits, SingleValidCut) {
  auto const v = vocab({"limit", "li", "mit"});
  EXPECT_EQ(enumerate_splits("limit", std::span(&v, 1)), (std::vector<Split>{{"li", "mit"}}));
}

TEST(EnumerateSplits, AllCombinationsInCutOrder) {
  auto const v = vocab({"numeric", "n", "umeric", "num", "eric", "numer", "ic"});
  EXPECT_EQ(enumerate_splits("numeric", std::span(&v, 1)),
            (std::vector<Split>{{"n", "umeric"}, {"num", "eric"}, {"numer", "ic"}}));
}

TEST(EnumerateSplits, NoValidCut) {
  auto const v = vocab({"ab", "b"});
  EXPECT_TRUE(enumerate_splits("ab", std::span(&v, 1)).empty());
}

TEST(EnumerateSplits, WholeWordMissingGivesNothing) {
  auto const v = vocab({"li", "mit"});
  EXPECT_TRUE(enumerate_splits("limit", std::span(&v, 1)).empty());
}

TEST(EnumerateSplits, RequiresEveryVocabulary) {
  std::vector<Vocab> const vs{vocab({"numeric", "num", "eric", "numer", "ic"}, "a"),
                              vocab({"numeric", "numer", "ic"}, "b")};
  EXPECT_EQ(enumerate_splits("numeric", vs), (std::vector<Split>{{"numer", "ic"}}));
}

TEST(EnumerateSplits, CutsOnlyAtScalarBoundaries) {
  // "café" = c a f é(2 bytes); a byte-level cut inside é must never appear.
  std::string const word = "caf\xC3\xA9";
  auto const v = vocab({word, "c", "af\xC3\xA9", "ca", "f\xC3\xA9", "caf", "\xC3\xA9"});
  auto const splits = enumerate_splits(word, std::span(&v, 1));
  EXPECT_EQ(splits.size(), 3u);
  for (auto const& s : splits) {
    EXPECT_TRUE(utf8::is_valid(s.left));
    EXPECT_TRUE(utf8::is_valid(s.right));
  }
}

std::vector<RawLexiconRecord> ten_words() {
  std::vector<RawLexiconRecord> r;
  for (std::string w : {"aa", "ab", "ac", "ad", "ae", "af", "ag", "ah", "ai", "aj"}) {
    r.push_back({w, w < "ag" ? Category::Root : Category::NonRoot});
  }
  return r;
}

Vocab ten_word_vocab() {
  std::vector<std::string> t{"a", "b", "c", "d", "e", "f", "g", "h", "i", "j"};
  for (auto const& r : ten_words()) t.push_back(r.word);
  return Vocab("m", t);
}

TEST(BuildDataset, RatioArithmeticAndDisjoint) {
  auto const v = ten_word_vocab();
  auto const split = build_dataset(ten_words(), std::span(&v, 1), 0.8, 7);
  EXPECT_EQ(split.train.size(), 8u);
  EXPECT_EQ(split.test.size(), 2u);
  std::set<std::string> train_words;
  for (auto const& e : split.train) train_words.insert(e.word);
  for (auto const& e : split.test) EXPECT_FALSE(train_words.count(e.word)) << e.word;
  EXPECT_EQ(split.seed, 7u);
}

TEST(BuildDataset, DeterministicUnderSeed) {
  auto const v = ten_word_vocab();
  auto const a = dataset_to_json(build_dataset(ten_words(), std::span(&v, 1), 0.8, 7));
  auto const b = dataset_to_json(build_dataset(ten_words(), std::span(&v, 1), 0.8, 7));
  EXPECT_EQ(a, b);
  auto const c = dataset_to_json(build_dataset(ten_words(), std::span(&v, 1), 0.8, 8));
  EXPECT_NE(a, c);
}

TEST(BuildDataset, TrainSizeIsFloorOfRatio) {
  // 0.8 * 3432 = 2745.6; the published split has 2745 training words.
  std::vector<RawLexiconRecord> records;
  std::vector<std::string> tokens{"x", "y"};
  for (int i = 0; i < 3432; ++i) {
    std::string const w = "w" + std::to_string(i);
    records.push_back({w + "x", Category::Root});
    tokens.push_back(w);
    tokens.push_back(w + "x");
  }
  Vocab const v("m", tokens);
  auto const split = build_dataset(records, std::span(&v, 1), 0.8, 1);
  EXPECT_EQ(split.train.size(), 2745u);
  EXPECT_EQ(split.test.size(), 687u);
}

TEST(BuildDataset, EmptyIntersectionIsAnError) {
  auto const v = vocab({"zzz"});
  try {
    build_dataset(ten_words(), std::span(&v, 1), 0.8, 1);
    FAIL();
  } catch (ValidationError const& e) {
    EXPECT_STREQ(e.what(), "empty intersection");
  }
}

TEST(BuildDataset, RatioMustBeOpenUnitInterval) {
  auto const v = ten_word_vocab();
  EXPECT_THROW(build_dataset(ten_words(), std::span(&v, 1), 1.0, 1), ValidationError);
  EXPECT_THROW(build_dataset(ten_words(), std::span(&v, 1), 0.0, 1), ValidationError);
}

TEST(BuildDataset, DuplicatesKeepFirstAndWarn) {
  std::vector<std::string> warnings;
  auto previous = set_warning_handler([&](std::string_view m) { warnings.emplace_back(m); });
  auto records = ten_words();
  records.push_back({"aa", Category::NonRoot});
  auto const v = ten_word_vocab();
  auto const split = build_dataset(records, std::span(&v, 1), 0.5, 3);
  set_warning_handler(previous);

  EXPECT_EQ(split.train.size() + split.test.size(), 10u);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("aa"), std::string::npos);
  for (auto const* part : {&split.train, &split.test}) {
    for (auto const& e : *part) {
      if (e.word == "aa") EXPECT_EQ(e.category, Category::Root);
    }
  }
}

// Random lexicons over a small alphabet against two random vocabularies.
TEST(BuildDataset, InvariantsHoldOnRandomInputs) {
  std::mt19937_64 gen(42);
  std::string const alphabet = "abcde";
  auto random_string = [&](int min_len, int max_len) {
    std::uniform_int_distribution<int> len(min_len, max_len), ch(0, 4);
    std::string s;
    for (int n = len(gen); n > 0; --n) s += alphabet[ch(gen)];
    return s;
  };
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<RawLexiconRecord> records;
    for (int i = 0; i < 80; ++i) {
      records.push_back({random_string(2, 5), gen() % 3 == 0 ? Category::NonRoot : Category::Root});
    }
    std::vector<Vocab> vocabs;
    for (int k = 0; k < 2; ++k) {
      std::vector<std::string> tokens;
      for (int i = 0; i < 150; ++i) tokens.push_back(random_string(1, 5));
      vocabs.emplace_back("v" + std::to_string(k), tokens);
    }
    DatasetSplit split;
    try {
      split = build_dataset(records, vocabs, 0.8, trial);
    } catch (ValidationError const&) {
      continue;  // empty intersection is legitimate for some draws
    }

    std::set<std::string> seen;
    std::map<Category, int> surviving;
    for (auto const& r : records) {
      if (seen.insert(r.word).second && !enumerate_splits(r.word, vocabs).empty()) {
        surviving[r.category]++;
      }
    }
    std::map<Category, int> counted;
    std::set<std::string> words;
    for (auto const* part : {&split.train, &split.test}) {
      for (auto const& e : *part) {
        EXPECT_TRUE(words.insert(e.word).second) << "word in both splits: " << e.word;
        counted[e.category]++;
        EXPECT_EQ(e.length, utf8::length(e.word));
        EXPECT_FALSE(e.splits.empty());
        std::set<Split> unique(e.splits.begin(), e.splits.end());
        EXPECT_EQ(unique.size(), e.splits.size());
        for (auto const& v : vocabs) EXPECT_TRUE(v.contains(e.word));
        for (auto const& s : e.splits) {
          EXPECT_EQ(s.left + s.right, e.word);
          for (auto const& v : vocabs) {
            EXPECT_TRUE(v.contains(s.left));
            EXPECT_TRUE(v.contains(s.right));
          }
        }
      }
    }
    EXPECT_EQ(counted, surviving);
  }
}

TEST(PickSplitPerRun, SingletonAlwaysChosen) {
  LexiconEntry const e{"limit", Category::Root, 5, {{"li", "mit"}}};
  for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) EXPECT_EQ(pick_split_per_run(e, seed), e.splits[0]);
}

TEST(PickSplitPerRun, MembershipDeterminismAndCoverage) {
  LexiconEntry const e{"numeric", Category::Root, 7, {{"n", "umeric"}, {"num", "eric"}, {"numer", "ic"}}};
  std::set<Split> chosen;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    auto const& s = pick_split_per_run(e, seed);
    EXPECT_NE(std::find(e.splits.begin(), e.splits.end(), s), e.splits.end());
    EXPECT_EQ(&s, &pick_split_per_run(e, seed));
    chosen.insert(s);
  }
  EXPECT_EQ(chosen.size(), 3u);
}

TEST(PickSplitPerRun, EmptySplitsRejected) {
  LexiconEntry const e{"x", Category::Root, 1, {}};
  EXPECT_THROW(pick_split_per_run(e, 1), ValidationError);
}

TEST(DatasetJson, SortedKeysAndRoundTrip) {
  auto const v = ten_word_vocab();
  auto const split = build_dataset(ten_words(), std::span(&v, 1), 0.8, 7);
  auto const text = dataset_to_json(split);
  EXPECT_LT(text.find("\"ratio\""), text.find("\"seed\""));
  EXPECT_LT(text.find("\"seed\""), text.find("\"test\""));
  EXPECT_LT(text.find("\"test\""), text.find("\"train\""));
  EXPECT_LT(text.find("\"category\""), text.find("\"length\""));

  auto const back = dataset_from_json(text);
  EXPECT_EQ(back.train, split.train);
  EXPECT_EQ(back.test, split.test);
  EXPECT_EQ(dataset_to_json(back), text);

  testing::TempDir dir;
  write_dataset(split, dir / "d.json");
  EXPECT_EQ(dataset_to_json(read_dataset(dir / "d.json")), text);
}

TEST(DatasetJson, RejectsInconsistentEntries) {
  EXPECT_THROW(dataset_from_json(R"({"ratio":0.8,"seed":1,"test":[],"train":[
      {"category":"root","length":3,"splits":[["d","og"]],"word":"cat"}]})"),
               ValidationError);
  EXPECT_THROW(dataset_from_json(R"({"ratio":0.8,"seed":1,"test":[],"train":[
      {"category":"root","length":4,"splits":[["d","og"]],"word":"dog"}]})"),
               ValidationError);
  EXPECT_THROW(dataset_from_json("{not json"), ParseError);
}

}  // namespace
}  // namespace subcomp
