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

// subcomp: layer-wise structural similarity between whole-word and composed
// subword representations.
//
//   subcomp geometry --config <path> --out <dir>
//   subcomp probe    --config <path> --out <dir>
//   subcomp compare  --config <path> --out <dir>
//   subcomp build-dataset --lexicon <tsv> --vocab <id>=<path>... --out <json>
//   subcomp validate-store <dir>
//   subcomp synth --out <dir>
//
// Exit status is 0 on success and 1 with a diagnostic on stderr otherwise.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "subcomp/embedding_store.h"
#include "subcomp/errors.h"
#include "subcomp/experiment.h"
#include "subcomp/lexicon.h"
#include "subcomp/report.h"
#include "subcomp/synthetic.h"

namespace {

namespace fs = std::filesystem;
using namespace subcomp;

void print_written(std::vector<fs::path> const& paths) {
  for (auto const& p : paths) std::cout << "wrote " << p.string() << '\n';
}

int run_task(fs::path const& config_path, fs::path const& out, Task expected) {
  ExperimentConfig config = load_config(config_path);
  if ((expected == Task::Geometry) != (config.task == Task::Geometry)) {
    throw ValidationError(std::string("config task \"") + std::string(to_string(config.task)) +
                          "\" does not match this subcommand");
  }
  print_written(emit_report(run_experiment(config), out));
  return 0;
}

int run_compare(fs::path const& config_path, fs::path const& out) {
  auto const [a, b] = load_comparison_config(config_path);
  auto const comparison = compare_variants(a, b);
  print_written(emit_report(comparison.merged(), out, PlotLayout::Overlay));
  return 0;
}

int run_build_dataset(fs::path const& lexicon, std::vector<std::string> const& vocab_args,
                      double ratio, std::uint64_t seed, fs::path const& out) {
  auto const records = parse_lexicon(lexicon);
  std::vector<Vocab> vocabs;
  for (auto const& arg : vocab_args) {
    auto const eq = arg.find('=');
    if (eq == std::string::npos) {
      vocabs.push_back(Vocab::load(arg, fs::path(arg).stem().string()));
    } else {
      vocabs.push_back(Vocab::load(arg.substr(eq + 1), arg.substr(0, eq)));
    }
  }
  auto const split = build_dataset(records, vocabs, ratio, seed);
  write_dataset(split, out);

  auto count = [](std::vector<LexiconEntry> const& part, Category c) {
    std::size_t n = 0;
    for (auto const& e : part) n += e.category == c ? 1 : 0;
    return n;
  };
  std::cout << "split   root  nonroot  total\n";
  for (auto const& [name, part] : {std::pair{"train", &split.train}, std::pair{"test", &split.test}}) {
    std::cout << name << "   " << count(*part, Category::Root) << "  "
              << count(*part, Category::NonRoot) << "  " << part->size() << '\n';
  }
  std::cout << "wrote " << out.string() << '\n';
  return 0;
}

int run_validate(fs::path const& dir) {
  auto const report = validate_store(dir);
  if (report.ok()) {
    std::cout << "PASS " << dir.string() << '\n';
    return 0;
  }
  std::cout << "FAIL " << dir.string() << '\n';
  for (auto const& f : report.findings) std::cout << "  " << f << '\n';
  return 1;
}

void write_text(fs::path const& path, std::string const& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw IoError("cannot write " + path.string());
}

int run_synth(SyntheticOptions const& options, double ratio, std::uint64_t split_seed,
              fs::path const& out) {
  auto const corpus = make_synthetic_corpus(options);
  write_synthetic_corpus(corpus, out);
  Vocab const vocab(options.model_id, corpus.vocab);
  write_dataset(build_dataset(corpus.lexicon, std::span<Vocab const>(&vocab, 1), ratio, split_seed),
                out / "dataset.json");

  std::string const models = R"("models": [{"id": ")" + options.model_id +
                             R"(", "store": "store", "pair_store": "pairs"}])";
  write_text(out / "geometry.json",
             "{\n  \"dataset\": \"dataset.json\",\n  " + models +
                 ",\n  \"task\": \"geometry\",\n  \"ops\": [\"add\", \"multiply\", \"absdiff\"],\n"
                 "  \"run_seeds\": [1, 2, 3],\n  \"category_filter\": [\"all\", \"root\", \"nonroot\"]\n}\n");
  write_text(out / "word_type.json",
             "{\n  \"dataset\": \"dataset.json\",\n  " + models +
                 ",\n  \"task\": \"word_type\",\n  \"run_seeds\": [1, 2, 3]\n}\n");
  write_text(out / "word_length.json",
             "{\n  \"dataset\": \"dataset.json\",\n  " + models +
                 ",\n  \"task\": \"word_length\",\n  \"run_seeds\": [1, 2, 3]\n}\n");
  write_text(out / "contextual.json",
             "{\n  \"dataset\": \"dataset.json\",\n  " + models +
                 ",\n  \"task\": \"geometry\",\n  \"mode\": \"contextual\",\n  \"ops\": [\"add\"],\n"
                 "  \"run_seeds\": [1, 2, 3]\n}\n");
  write_text(out / "compare.json",
             "{\n  \"a\": \"geometry_add.json\",\n  \"b\": \"contextual.json\"\n}\n");
  write_text(out / "geometry_add.json",
             "{\n  \"dataset\": \"dataset.json\",\n  " + models +
                 ",\n  \"task\": \"geometry\",\n  \"ops\": [\"add\"],\n  \"run_seeds\": [1, 2, 3]\n}\n");
  std::cout << "wrote synthetic corpus, dataset.json and example configs to " << out.string()
            << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Layer-wise structural similarity of whole-word and composed subword representations"};
  app.require_subcommand(1);

  fs::path config, out;
  auto add_task = [&](char const* name, char const* help) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("--config", config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", out, "Output directory")->required();
    return cmd;
  };
  auto* geometry = add_task("geometry", "Procrustes alignment + P@1 per layer and composition op");
  auto* probe = add_task("probe", "Word-type or word-length probes per layer");
  auto* compare = add_task("compare", "Run two config variants and overlay their curves");

  fs::path lexicon, dataset_out;
  std::vector<std::string> vocab_args;
  double ratio = 0.8;
  std::uint64_t seed = 0;
  auto* build = app.add_subcommand("build-dataset", "Intersect a morpheme lexicon with vocabularies");
  build->add_option("--lexicon", lexicon, "word<TAB>root|nonroot file")->required()->check(CLI::ExistingFile);
  build->add_option("--vocab", vocab_args, "Vocabulary file, optionally prefixed with <model_id>=")->required();
  build->add_option("--ratio", ratio, "Train fraction")->capture_default_str();
  build->add_option("--seed", seed, "Shuffle seed")->capture_default_str();
  build->add_option("--out", dataset_out, "Dataset JSON output")->required();

  fs::path store_dir;
  auto* validate = app.add_subcommand("validate-store", "Check an embedding store directory");
  validate->add_option("dir", store_dir, "Store directory")->required();

  SyntheticOptions synth_options;
  bool noise = false;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus with planted structure");
  synth->add_option("--out", out, "Output directory")->required();
  synth->add_option("--words", synth_options.num_words, "Number of words")->capture_default_str();
  synth->add_option("--layers", synth_options.num_layers, "Number of blocks L")->capture_default_str();
  synth->add_option("--dim", synth_options.dim, "Vector dimension")->capture_default_str();
  synth->add_option("--seed", synth_options.seed, "Generator seed")->capture_default_str();
  synth->add_option("--diverge-at", synth_options.contextual_divergence_layer,
                    "First layer where pair vectors differ from isolated ones")->capture_default_str();
  synth->add_option("--ratio", ratio, "Train fraction")->capture_default_str();
  synth->add_flag("--noise", noise, "Independent noise vectors instead of planted structure");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*geometry) return run_task(config, out, Task::Geometry);
    if (*probe) return run_task(config, out, Task::WordType);
    if (*compare) return run_compare(config, out);
    if (*build) return run_build_dataset(lexicon, vocab_args, ratio, seed, dataset_out);
    if (*validate) return run_validate(store_dir);
    if (*synth) {
      synth_options.planted = !noise;
      return run_synth(synth_options, ratio, seed, out);
    }
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
