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

// Writes a synthetic corpus plus dataset to disk and hands back a config
// that points at it. Shared by the experiment tests and the acceptance gate.

#ifndef SUBCOMP_TESTS_TESTING_FIXTURE_H_
#define SUBCOMP_TESTS_TESTING_FIXTURE_H_

#include <filesystem>
#include <span>

#include "subcomp/experiment.h"
#include "subcomp/lexicon.h"
#include "subcomp/synthetic.h"

namespace subcomp::testing {

struct Fixture {
  SyntheticCorpus corpus;
  DatasetSplit dataset;
  ExperimentConfig config;
};

inline Fixture make_fixture(std::filesystem::path const& dir, SyntheticOptions const& options,
                            double ratio = 0.8, std::uint64_t split_seed = 1) {
  Fixture f;
  f.corpus = make_synthetic_corpus(options);
  write_synthetic_corpus(f.corpus, dir);
  Vocab const vocab(options.model_id, f.corpus.vocab);
  f.dataset = build_dataset(f.corpus.lexicon, std::span<Vocab const>(&vocab, 1), ratio, split_seed);
  write_dataset(f.dataset, dir / "dataset.json");
  f.config.models = {{options.model_id, dir / "store", dir / "pairs"}};
  f.config.dataset = dir / "dataset.json";
  return f;
}

}  // namespace subcomp::testing

#endif  // SUBCOMP_TESTS_TESTING_FIXTURE_H_
