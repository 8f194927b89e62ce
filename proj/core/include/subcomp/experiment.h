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

#ifndef SUBCOMP_EXPERIMENT_H_
#define SUBCOMP_EXPERIMENT_H_

// Layer-wise experiment grid: models x layers x composition ops x runs x
// category filters, in isolated or contextual mode, for the geometry
// (Procrustes + P@1) task or the two probing tasks.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "subcomp/composer.h"
#include "subcomp/curve.h"
#include "subcomp/probes.h"

namespace subcomp {

enum class CategoryFilter { All, RootOnly, NonRootOnly };
enum class RunMode { Isolated, Contextual };
enum class Task { Geometry, WordType, WordLength };
enum class RetrievalPool { Test, TrainAndTest };

std::string_view to_string(CategoryFilter filter);
std::string_view to_string(RunMode mode);
std::string_view to_string(Task task);
std::string_view to_string(RetrievalPool pool);

struct ModelSpec {
  std::string id;
  std::filesystem::path store;       // isolated store: words and subwords
  std::filesystem::path pair_store;  // contextual pair store, contextual mode only

  friend bool operator==(ModelSpec const&, ModelSpec const&) = default;
};

struct ExperimentConfig {
  std::vector<ModelSpec> models;
  std::filesystem::path dataset;
  Task task = Task::Geometry;
  std::vector<CompositionOp> ops{CompositionOp::Add, CompositionOp::Multiply,
                                 CompositionOp::AbsDiff};
  std::vector<std::uint64_t> run_seeds{1, 2, 3};
  std::vector<CategoryFilter> filters{CategoryFilter::All};
  RunMode mode = RunMode::Isolated;
  RetrievalPool pool = RetrievalPool::Test;
  /// Geometry only: fit a separate map on each category's train subset.
  bool refit_per_category = false;
  std::vector<int> layers;  // empty = every layer of the store
  TrainConfig probe;
  std::uint64_t baseline_seed = 0;
  int baseline_resamples = 100;
  int threads = 1;

  int runs() const noexcept { return static_cast<int>(run_seeds.size()); }
};

/// Parses the JSON config format. Relative paths resolve against `base_dir`.
/// Unknown keys are rejected.
ExperimentConfig parse_config(std::string_view json_text, std::filesystem::path const& base_dir);
ExperimentConfig load_config(std::filesystem::path const& path);

/// Throws ValidationError describing the first problem found.
void validate_config(ExperimentConfig const& config);

/// Reported whenever a Procrustes map or probe is fitted, with the words
/// whose vectors took part.
struct FitEvent {
  std::string model;
  int layer = 0;
  std::string what;  // procrustes:<op> | probe:original | probe:composed
  int run = 0;
  std::vector<std::string> words;
};
using FitObserver = std::function<void(FitEvent const&)>;

/// Per layer, op and run: compose the train split, fit Procrustes against the
/// whole-word train vectors, map the composed test split and score P@1
/// against the whole-word candidate pool. One curve per (model, op, filter).
ResultSet run_geometry(ExperimentConfig const& config, FitObserver const& observer = {});

/// Per layer and run: train the task's probe on original and on
/// Add-composed train features and score both on test, alongside the random
/// baseline. Curves use op = original | composed | baseline.
ResultSet run_probe(ExperimentConfig const& config, FitObserver const& observer = {});

/// Dispatches on config.task.
ResultSet run_experiment(ExperimentConfig const& config, FitObserver const& observer = {});

struct VariantComparison {
  ResultSet a;
  ResultSet b;

  /// Both sides in one set; model names gain " (a)" / " (b)" when the two
  /// sides would otherwise produce identical keys.
  ResultSet merged() const;
};

/// Reads `{"a": <config or path>, "b": <config or path>}`. Inline configs
/// resolve relative paths against the file's directory, referenced configs
/// against their own.
std::pair<ExperimentConfig, ExperimentConfig> load_comparison_config(
    std::filesystem::path const& path);

/// Runs two configs that differ only in store paths or mode. Throws
/// ValidationError when anything else differs or layer axes disagree.
VariantComparison compare_variants(ExperimentConfig const& a, ExperimentConfig const& b);

}  // namespace subcomp

#endif  // SUBCOMP_EXPERIMENT_H_
