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

#include "subcomp/experiment.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "subcomp/embedding_store.h"
#include "subcomp/errors.h"
#include "subcomp/procrustes.h"
#include "subcomp/retrieval.h"

namespace subcomp {
namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(CategoryFilter filter) {
  switch (filter) {
    case CategoryFilter::All:
      return "all";
    case CategoryFilter::RootOnly:
      return "root";
    case CategoryFilter::NonRootOnly:
      return "nonroot";
  }
  return "?";
}

std::string_view to_string(RunMode mode) {
  return mode == RunMode::Isolated ? "isolated" : "contextual";
}

std::string_view to_string(Task task) {
  switch (task) {
    case Task::Geometry:
      return "geometry";
    case Task::WordType:
      return "word_type";
    case Task::WordLength:
      return "word_length";
  }
  return "?";
}

std::string_view to_string(RetrievalPool pool) {
  return pool == RetrievalPool::Test ? "test" : "train_test";
}

namespace {

template <typename Enum, std::size_t N>
Enum parse_enum(std::string const& text, Enum const (&values)[N], char const* what) {
  for (Enum v : values) {
    if (to_string(v) == text) return v;
  }
  throw ValidationError(std::string("config: unknown ") + what + " \"" + text + "\"");
}

constexpr CategoryFilter kFilters[] = {CategoryFilter::All, CategoryFilter::RootOnly,
                                       CategoryFilter::NonRootOnly};
constexpr RunMode kModes[] = {RunMode::Isolated, RunMode::Contextual};
constexpr Task kTasks[] = {Task::Geometry, Task::WordType, Task::WordLength};
constexpr RetrievalPool kPools[] = {RetrievalPool::Test, RetrievalPool::TrainAndTest};

fs::path resolve(fs::path const& base, std::string const& p) {
  fs::path const path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

void reject_unknown_keys(json const& obj, std::set<std::string> const& known,
                         std::string const& where) {
  for (auto const& [key, value] : obj.items()) {
    if (!known.count(key)) {
      throw ValidationError("config: unknown key \"" + key + "\" in " + where);
    }
  }
}

bool in_filter(CategoryFilter filter, Category c) {
  switch (filter) {
    case CategoryFilter::All:
      return true;
    case CategoryFilter::RootOnly:
      return c == Category::Root;
    case CategoryFilter::NonRootOnly:
      return c == Category::NonRoot;
  }
  return false;
}

std::vector<std::size_t> filter_indices(std::vector<LexiconEntry> const& entries,
                                        CategoryFilter filter) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (in_filter(filter, entries[i].category)) out.push_back(i);
  }
  return out;
}

Matrix select_rows(Matrix const& m, std::span<std::size_t const> rows) {
  Matrix out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = m.row(static_cast<Eigen::Index>(rows[i]));
  }
  return out;
}

template <typename T>
std::vector<T> select(std::vector<T> const& v, std::span<std::size_t const> idx) {
  std::vector<T> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(v[i]);
  return out;
}

std::vector<std::string> words_of(std::vector<LexiconEntry> const& entries) {
  std::vector<std::string> out;
  out.reserve(entries.size());
  for (auto const& e : entries) out.push_back(e.word);
  return out;
}

/// Runs fn(0..n-1) on up to `threads` workers; rethrows the first failure.
void parallel_for(std::size_t n, int threads, std::function<void(std::size_t)> const& fn) {
  std::size_t const workers =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

struct OpenModel {
  EmbeddingStore store;
  std::optional<EmbeddingStore> pairs;
  std::vector<int> layers;
};

OpenModel open_model(ExperimentConfig const& config, ModelSpec const& spec) {
  OpenModel m{EmbeddingStore::open(spec.store), std::nullopt, {}};
  if (m.store.kind() != StoreKind::Isolated) {
    throw ValidationError("model \"" + spec.id + "\": store must be isolated");
  }
  if (config.mode == RunMode::Contextual) {
    m.pairs = EmbeddingStore::open(spec.pair_store);
    if (m.pairs->kind() != StoreKind::ContextualPair) {
      throw ValidationError("model \"" + spec.id + "\": pair_store must be contextual_pair");
    }
    if (m.pairs->num_layers() != m.store.num_layers() || m.pairs->dim() != m.store.dim()) {
      throw ValidationError("model \"" + spec.id +
                            "\": pair_store layers/dim differ from the isolated store");
    }
  }
  if (config.layers.empty()) {
    for (int l = 0; l <= m.store.num_layers(); ++l) m.layers.push_back(l);
  } else {
    for (int l : config.layers) {
      if (l < 0 || l > m.store.num_layers()) {
        throw ValidationError("model \"" + spec.id + "\": layer " + std::to_string(l) +
                              " outside 0.." + std::to_string(m.store.num_layers()));
      }
    }
    m.layers = config.layers;
  }
  return m;
}

ComposedBatch compose_part(ExperimentConfig const& config, CompositionOp op,
                           std::vector<LexiconEntry> const& entries, OpenModel const& model,
                           int layer, std::uint64_t seed) {
  if (config.mode == RunMode::Contextual) {
    return compose_contextual(entries, *model.pairs, layer, seed);
  }
  return compose_batch(op, entries, model.store, layer, seed);
}

class SerializedObserver {
 public:
  explicit SerializedObserver(FitObserver const& observer) : observer_(observer) {}
  void operator()(FitEvent const& event) {
    if (!observer_) return;
    std::lock_guard<std::mutex> lock(mutex_);
    observer_(event);
  }
  bool active() const { return static_cast<bool>(observer_); }

 private:
  FitObserver const& observer_;
  std::mutex mutex_;
};

// samples[filter][series][layer][run]
using SampleGrid = std::vector<std::vector<std::vector<std::vector<double>>>>;

SampleGrid make_grid(std::size_t filters, std::size_t series, std::size_t layers, int runs) {
  return SampleGrid(filters, std::vector<std::vector<std::vector<double>>>(
                                 series, std::vector<std::vector<double>>(
                                             layers, std::vector<double>(runs, 0.0))));
}

void emit_curves(ResultSet& out, SampleGrid& grid, ExperimentConfig const& config,
                 std::string const& model, std::vector<int> const& layers,
                 std::vector<std::string> const& series_names) {
  for (std::size_t f = 0; f < config.filters.size(); ++f) {
    for (std::size_t s = 0; s < series_names.size(); ++s) {
      CurveSeries curve;
      curve.key = {model, std::string(to_string(config.task)), series_names[s],
                   std::string(to_string(config.mode)),
                   std::string(to_string(config.filters[f]))};
      for (std::size_t l = 0; l < layers.size(); ++l) {
        curve.curve.add(layers[l], std::move(grid[f][s][l]));
      }
      out.push_back(std::move(curve));
    }
  }
}

DatasetSplit load_dataset_checked(ExperimentConfig const& config) {
  DatasetSplit data = read_dataset(config.dataset);
  if (data.train.empty() || data.test.empty()) {
    throw ValidationError("dataset needs non-empty train and test splits");
  }
  for (auto filter : config.filters) {
    if (filter_indices(data.test, filter).empty()) {
      throw ValidationError("no test words in category filter \"" +
                            std::string(to_string(filter)) + "\"");
    }
  }
  return data;
}

}  // namespace

ExperimentConfig parse_config(std::string_view json_text, fs::path const& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (json::exception const& e) {
    throw ParseError(std::string("config JSON: ") + e.what(), 0);
  }
  if (!doc.is_object()) throw ValidationError("config: top level must be an object");

  ExperimentConfig c;
  try {
    reject_unknown_keys(doc,
                        {"models", "dataset", "task", "ops", "runs", "run_seeds",
                         "category_filter", "mode", "retrieval_pool", "refit_per_category",
                         "layers", "probe", "threads"},
                        "config");
    c.dataset = resolve(base_dir, doc.at("dataset").get<std::string>());
    for (auto const& m : doc.at("models")) {
      reject_unknown_keys(m, {"id", "store", "pair_store"}, "model");
      ModelSpec spec;
      spec.id = m.at("id").get<std::string>();
      spec.store = resolve(base_dir, m.at("store").get<std::string>());
      if (m.contains("pair_store")) {
        spec.pair_store = resolve(base_dir, m.at("pair_store").get<std::string>());
      }
      c.models.push_back(std::move(spec));
    }
    if (doc.contains("task")) c.task = parse_enum(doc["task"].get<std::string>(), kTasks, "task");
    if (doc.contains("ops")) {
      c.ops.clear();
      for (auto const& op : doc["ops"]) c.ops.push_back(parse_composition_op(op.get<std::string>()));
    }
    if (doc.contains("run_seeds")) {
      c.run_seeds = doc["run_seeds"].get<std::vector<std::uint64_t>>();
    } else if (doc.contains("runs")) {
      int const runs = doc["runs"].get<int>();
      if (runs < 1) throw ValidationError("config: runs must be positive");
      c.run_seeds.clear();
      for (int r = 1; r <= runs; ++r) c.run_seeds.push_back(static_cast<std::uint64_t>(r));
    }
    if (doc.contains("runs") && doc["runs"].get<int>() != c.runs()) {
      throw ValidationError("config: runs must equal the number of run_seeds");
    }
    if (doc.contains("category_filter")) {
      auto const& f = doc["category_filter"];
      c.filters.clear();
      if (f.is_array()) {
        for (auto const& v : f) c.filters.push_back(parse_enum(v.get<std::string>(), kFilters, "category_filter"));
      } else {
        c.filters.push_back(parse_enum(f.get<std::string>(), kFilters, "category_filter"));
      }
    }
    if (doc.contains("mode")) c.mode = parse_enum(doc["mode"].get<std::string>(), kModes, "mode");
    if (doc.contains("retrieval_pool")) {
      c.pool = parse_enum(doc["retrieval_pool"].get<std::string>(), kPools, "retrieval_pool");
    }
    if (doc.contains("refit_per_category")) c.refit_per_category = doc["refit_per_category"].get<bool>();
    if (doc.contains("layers")) c.layers = doc["layers"].get<std::vector<int>>();
    if (doc.contains("threads")) c.threads = doc["threads"].get<int>();
    if (doc.contains("probe")) {
      auto const& p = doc["probe"];
      reject_unknown_keys(p,
                          {"epochs", "batch_size", "learning_rate", "beta1", "beta2", "epsilon",
                           "shuffle_seed", "baseline_seed", "baseline_resamples"},
                          "probe");
      c.probe.epochs = p.value("epochs", c.probe.epochs);
      c.probe.batch_size = p.value("batch_size", c.probe.batch_size);
      c.probe.adam.learning_rate = p.value("learning_rate", c.probe.adam.learning_rate);
      c.probe.adam.beta1 = p.value("beta1", c.probe.adam.beta1);
      c.probe.adam.beta2 = p.value("beta2", c.probe.adam.beta2);
      c.probe.adam.epsilon = p.value("epsilon", c.probe.adam.epsilon);
      c.probe.shuffle_seed = p.value("shuffle_seed", c.probe.shuffle_seed);
      c.baseline_seed = p.value("baseline_seed", c.baseline_seed);
      c.baseline_resamples = p.value("baseline_resamples", c.baseline_resamples);
    }
  } catch (json::exception const& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  return c;
}

ExperimentConfig load_config(fs::path const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path());
}

void validate_config(ExperimentConfig const& c) {
  auto fail = [](std::string const& msg) { throw ValidationError("config: " + msg); };
  if (c.models.empty()) fail("at least one model is required");
  if (c.run_seeds.empty()) fail("at least one run seed is required");
  if (c.filters.empty()) fail("at least one category filter is required");
  if (c.threads < 1) fail("threads must be positive");
  if (c.baseline_resamples < 1) fail("baseline_resamples must be positive");
  if (c.task == Task::Geometry && c.ops.empty()) fail("geometry needs at least one op");
  if (c.mode == RunMode::Contextual && c.task == Task::Geometry &&
      std::any_of(c.ops.begin(), c.ops.end(),
                  [](CompositionOp op) { return op != CompositionOp::Add; })) {
    fail("contextual mode composes by addition only; set ops to [\"add\"]");
  }
  std::set<std::string> ids;
  for (auto const& m : c.models) {
    if (m.id.empty()) fail("model id must be non-empty");
    if (!ids.insert(m.id).second) fail("duplicate model id \"" + m.id + "\"");
    if (!fs::exists(m.store)) fail("store path does not exist: " + m.store.string());
    if (c.mode == RunMode::Contextual) {
      if (m.pair_store.empty()) fail("contextual mode needs pair_store for \"" + m.id + "\"");
      if (!fs::exists(m.pair_store)) fail("pair_store path does not exist: " + m.pair_store.string());
    }
  }
  if (!fs::exists(c.dataset)) fail("dataset path does not exist: " + c.dataset.string());
  if (c.probe.epochs < 1 || c.probe.batch_size < 1 || !(c.probe.adam.learning_rate > 0.0)) {
    fail("probe hyperparameters must be positive");
  }
}

ResultSet run_geometry(ExperimentConfig const& config, FitObserver const& observer) {
  validate_config(config);
  if (config.task != Task::Geometry) throw ValidationError("run_geometry needs task geometry");
  DatasetSplit const data = load_dataset_checked(config);
  SerializedObserver notify(observer);

  std::vector<std::vector<std::size_t>> train_subsets, test_subsets;
  for (auto filter : config.filters) {
    train_subsets.push_back(filter_indices(data.train, filter));
    test_subsets.push_back(filter_indices(data.test, filter));
    if (config.refit_per_category && train_subsets.back().empty()) {
      throw ValidationError("no train words in category filter \"" +
                            std::string(to_string(filter)) + "\"");
    }
  }
  auto const train_words = words_of(data.train);
  std::size_t const offset = config.pool == RetrievalPool::Test ? 0 : data.train.size();

  ResultSet out;
  for (auto const& spec : config.models) {
    OpenModel const model = open_model(config, spec);
    auto grid = make_grid(config.filters.size(), config.ops.size(), model.layers.size(),
                          config.runs());

    parallel_for(model.layers.size(), config.threads, [&](std::size_t li) {
      int const layer = model.layers[li];
      Matrix const y_train = whole_word_matrix(data.train, model.store, layer);
      Matrix const y_test = whole_word_matrix(data.test, model.store, layer);
      Matrix candidates = y_test;
      if (config.pool == RetrievalPool::TrainAndTest) {
        candidates.resize(y_train.rows() + y_test.rows(), y_test.cols());
        candidates << y_train, y_test;
      }

      for (std::size_t oi = 0; oi < config.ops.size(); ++oi) {
        CompositionOp const op = config.ops[oi];
        for (int r = 0; r < config.runs(); ++r) {
          std::uint64_t const seed = config.run_seeds[r];
          Matrix const x_train = compose_part(config, op, data.train, model, layer, seed).rows;
          Matrix const x_test = compose_part(config, op, data.test, model, layer, seed).rows;

          auto score = [&](ProcrustesMap const& map, std::size_t fi) {
            auto const& subset = test_subsets[fi];
            Matrix const queries = apply(map, select_rows(x_test, subset));
            std::vector<std::size_t> targets;
            targets.reserve(subset.size());
            for (auto i : subset) targets.push_back(offset + i);
            return precision_at_k(queries, candidates, targets, std::span<int const>{}).p_at_1;
          };
          std::string const what = "procrustes:" + std::string(to_string(op));

          if (!config.refit_per_category) {
            notify({spec.id, layer, what, r, train_words});
            ProcrustesMap const map = fit_procrustes(x_train, y_train);
            for (std::size_t fi = 0; fi < config.filters.size(); ++fi) {
              grid[fi][oi][li][r] = score(map, fi);
            }
          } else {
            for (std::size_t fi = 0; fi < config.filters.size(); ++fi) {
              auto const& subset = train_subsets[fi];
              notify({spec.id, layer, what + ":" + std::string(to_string(config.filters[fi])), r,
                      select(train_words, subset)});
              ProcrustesMap const map =
                  fit_procrustes(select_rows(x_train, subset), select_rows(y_train, subset));
              grid[fi][oi][li][r] = score(map, fi);
            }
          }
        }
      }
    });

    std::vector<std::string> names;
    for (auto op : config.ops) names.emplace_back(to_string(op));
    emit_curves(out, grid, config, spec.id, model.layers, names);
  }
  return out;
}

ResultSet run_probe(ExperimentConfig const& config, FitObserver const& observer) {
  validate_config(config);
  if (config.task == Task::Geometry) throw ValidationError("run_probe needs a probing task");
  DatasetSplit const data = load_dataset_checked(config);
  SerializedObserver notify(observer);

  ProbeKind const kind = config.task == Task::WordType ? ProbeKind::Logistic : ProbeKind::Linear;
  auto label_of = [&](LexiconEntry const& e) {
    return config.task == Task::WordType ? (e.category == Category::NonRoot ? 1 : 0)
                                         : static_cast<int>(e.length);
  };
  std::vector<int> train_labels, test_labels;
  for (auto const& e : data.train) train_labels.push_back(label_of(e));
  for (auto const& e : data.test) test_labels.push_back(label_of(e));

  std::vector<std::vector<std::size_t>> test_subsets;
  for (auto filter : config.filters) test_subsets.push_back(filter_indices(data.test, filter));
  auto const train_words = words_of(data.train);

  enum Series : std::size_t { kOriginal = 0, kComposed = 1, kBaseline = 2 };
  ResultSet out;
  for (auto const& spec : config.models) {
    OpenModel const model = open_model(config, spec);
    auto grid = make_grid(config.filters.size(), 3, model.layers.size(), config.runs());

    parallel_for(model.layers.size(), config.threads, [&](std::size_t li) {
      int const layer = model.layers[li];
      Matrix const y_train = whole_word_matrix(data.train, model.store, layer);
      Matrix const y_test = whole_word_matrix(data.test, model.store, layer);

      // The original-word probe and the baseline do not depend on the run.
      notify({spec.id, layer, "probe:original", 0, train_words});
      ProbeModel const original = train_probe(kind, y_train, train_labels, config.probe);
      for (std::size_t fi = 0; fi < config.filters.size(); ++fi) {
        auto const& subset = test_subsets[fi];
        auto const labels = select(test_labels, subset);
        double const orig = evaluate_probe(original, select_rows(y_test, subset), labels).value;
        double const base = random_baseline(kind, train_labels, labels, config.baseline_seed,
                                            config.baseline_resamples)
                                .value;
        for (int r = 0; r < config.runs(); ++r) {
          grid[fi][kOriginal][li][r] = orig;
          grid[fi][kBaseline][li][r] = base;
        }
      }

      for (int r = 0; r < config.runs(); ++r) {
        std::uint64_t const seed = config.run_seeds[r];
        Matrix const x_train =
            compose_part(config, CompositionOp::Add, data.train, model, layer, seed).rows;
        Matrix const x_test =
            compose_part(config, CompositionOp::Add, data.test, model, layer, seed).rows;
        notify({spec.id, layer, "probe:composed", r, train_words});
        ProbeModel const composed = train_probe(kind, x_train, train_labels, config.probe);
        for (std::size_t fi = 0; fi < config.filters.size(); ++fi) {
          auto const& subset = test_subsets[fi];
          grid[fi][kComposed][li][r] =
              evaluate_probe(composed, select_rows(x_test, subset), select(test_labels, subset))
                  .value;
        }
      }
    });

    emit_curves(out, grid, config, spec.id, model.layers, {"original", "composed", "baseline"});
  }
  return out;
}

ResultSet run_experiment(ExperimentConfig const& config, FitObserver const& observer) {
  return config.task == Task::Geometry ? run_geometry(config, observer)
                                       : run_probe(config, observer);
}

ResultSet VariantComparison::merged() const {
  bool clash = false;
  for (auto const& x : a) {
    for (auto const& y : b) clash = clash || x.key == y.key;
  }
  ResultSet out;
  for (auto const* side : {&a, &b}) {
    for (auto series : *side) {
      if (clash) series.key.model += side == &a ? " (a)" : " (b)";
      out.push_back(std::move(series));
    }
  }
  return out;
}

std::pair<ExperimentConfig, ExperimentConfig> load_comparison_config(fs::path const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (json::exception const& e) {
    throw ParseError(std::string("comparison config JSON: ") + e.what(), 0);
  }
  if (!doc.is_object()) throw ValidationError("comparison config must be an object");
  reject_unknown_keys(doc, {"a", "b"}, "comparison config");
  auto side = [&](char const* name) {
    if (!doc.contains(name)) {
      throw ValidationError(std::string("comparison config: missing \"") + name + "\"");
    }
    auto const& v = doc.at(name);
    if (v.is_string()) return load_config(resolve(path.parent_path(), v.get<std::string>()));
    return parse_config(v.dump(), path.parent_path());
  };
  return {side("a"), side("b")};
}

VariantComparison compare_variants(ExperimentConfig const& a, ExperimentConfig const& b) {
  validate_config(a);
  validate_config(b);
  auto same_except_stores = [](ExperimentConfig x, ExperimentConfig y) {
    x.mode = y.mode;
    if (x.models.size() != y.models.size()) return false;
    for (std::size_t i = 0; i < x.models.size(); ++i) x.models[i] = y.models[i];
    return x.dataset == y.dataset && x.task == y.task && x.ops == y.ops &&
           x.run_seeds == y.run_seeds && x.filters == y.filters && x.pool == y.pool &&
           x.refit_per_category == y.refit_per_category && x.layers == y.layers &&
           x.probe.epochs == y.probe.epochs && x.probe.batch_size == y.probe.batch_size &&
           x.probe.shuffle_seed == y.probe.shuffle_seed &&
           x.probe.adam.learning_rate == y.probe.adam.learning_rate &&
           x.probe.adam.beta1 == y.probe.adam.beta1 && x.probe.adam.beta2 == y.probe.adam.beta2 &&
           x.probe.adam.epsilon == y.probe.adam.epsilon && x.baseline_seed == y.baseline_seed &&
           x.baseline_resamples == y.baseline_resamples;
  };
  if (!same_except_stores(a, b)) {
    throw ValidationError("compare: configs may differ only in store paths, model ids or mode");
  }
  for (std::size_t i = 0; i < a.models.size(); ++i) {
    auto const la = EmbeddingStore::open(a.models[i].store).num_layers();
    auto const lb = EmbeddingStore::open(b.models[i].store).num_layers();
    if (la != lb) {
      throw ValidationError("compare: mismatched layer counts for model " + std::to_string(i) +
                            " (" + std::to_string(la) + " vs " + std::to_string(lb) + ")");
    }
  }
  return {run_experiment(a), run_experiment(b)};
}

}  // namespace subcomp
