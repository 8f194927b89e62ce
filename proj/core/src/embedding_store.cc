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

#include "subcomp/embedding_store.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "subcomp/errors.h"

namespace subcomp {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr char kManifestName[] = "manifest.json";
constexpr int kFormatVersion = 1;

template <typename T>
T byteswap_value(T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  for (std::size_t i = 0; i < sizeof(T) / 2; ++i) {
    std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
  }
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

template <typename T>
void write_raw(fs::path const& file, std::span<T const> values) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + file.string());
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<char const*>(values.data()),
              static_cast<std::streamsize>(values.size_bytes()));
  } else {
    for (T v : values) {
      T const le = byteswap_value(v);
      out.write(reinterpret_cast<char const*>(&le), sizeof(T));
    }
  }
  if (!out) throw IoError("write failed for " + file.string());
}

template <typename T>
void fix_endianness(std::span<T> values) {
  if constexpr (std::endian::native != std::endian::little) {
    for (T& v : values) v = byteswap_value(v);
  }
}

StoreKind parse_kind(std::string const& s) {
  if (s == "isolated") return StoreKind::Isolated;
  if (s == "contextual_pair") return StoreKind::ContextualPair;
  throw ValidationError("unknown store kind \"" + s + "\"");
}

void check_manifest(StoreManifest const& m) {
  if (m.num_layers < 1) throw ValidationError("manifest: num_layers must be >= 1");
  if (m.dim < 1) throw ValidationError("manifest: dim must be >= 1");
  std::unordered_set<std::string> seen;
  for (auto const& key : m.items) {
    if (!seen.insert(key).second) {
      throw ValidationError("manifest: duplicate item \"" + key + "\"");
    }
  }
}

void check_matrix(StoreManifest const& m, FloatMatrix const& mat, int layer,
                  std::string_view what) {
  auto const n = static_cast<Eigen::Index>(m.items.size());
  if (mat.rows() != n || mat.cols() != m.dim) {
    throw ValidationError("shape mismatch " + std::string(what) + " layer " +
                          std::to_string(layer) + ": expected " + std::to_string(n) +
                          "x" + std::to_string(m.dim) + ", got " +
                          std::to_string(mat.rows()) + "x" + std::to_string(mat.cols()));
  }
  if (!mat.allFinite()) {
    throw ValidationError("non-finite value in " + std::string(what) + " layer " +
                          std::to_string(layer));
  }
}

json manifest_to_json(StoreManifest const& m) {
  json items = json::array();
  for (auto const& key : m.items) {
    if (m.kind == StoreKind::ContextualPair) {
      auto const tab = key.find('\t');
      items.push_back(json::array({key.substr(0, tab), key.substr(tab + 1)}));
    } else {
      items.push_back(key);
    }
  }
  json metadata = json::object();
  for (auto const& [k, v] : m.metadata) metadata[k] = v;
  return json{{"dim", m.dim},
              {"dtype", "float32_le"},
              {"format_version", kFormatVersion},
              {"items", std::move(items)},
              {"kind", std::string(to_string(m.kind))},
              {"metadata", std::move(metadata)},
              {"model_id", m.model_id},
              {"num_layers", m.num_layers}};
}

StoreManifest manifest_from_json(json const& j) {
  StoreManifest m;
  m.model_id = j.at("model_id").get<std::string>();
  m.num_layers = j.at("num_layers").get<int>();
  m.dim = j.at("dim").get<int>();
  m.kind = parse_kind(j.at("kind").get<std::string>());
  if (j.contains("dtype") && j.at("dtype").get<std::string>() != "float32_le") {
    throw ValidationError("manifest: unsupported dtype");
  }
  for (auto const& item : j.at("items")) {
    if (m.kind == StoreKind::ContextualPair) {
      if (!item.is_array() || item.size() != 2) {
        throw ValidationError("manifest: pair items must be [left, right]");
      }
      m.items.push_back(pair_key(item[0].get<std::string>(), item[1].get<std::string>()));
    } else {
      m.items.push_back(item.get<std::string>());
    }
  }
  if (j.contains("metadata")) {
    for (auto const& [k, v] : j.at("metadata").items()) {
      m.metadata[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
  }
  return m;
}

StoreManifest read_manifest(fs::path const& dir) {
  std::ifstream in(dir / kManifestName, std::ios::binary);
  if (!in) throw IoError("cannot open " + (dir / kManifestName).string());
  json j;
  try {
    j = json::parse(in);
    return manifest_from_json(j);
  } catch (json::exception const& e) {
    throw ValidationError(std::string("manifest: ") + e.what());
  }
}

void write_manifest(StoreManifest const& m, fs::path const& dir) {
  std::ofstream out(dir / kManifestName, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + (dir / kManifestName).string());
  out << manifest_to_json(m).dump(2) << '\n';
  if (!out) throw IoError("write failed for manifest");
}

void prepare_dir(fs::path const& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

std::vector<float> read_floats(fs::path const& file, std::size_t count) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot open " + file.string());
  std::vector<float> values(count);
  in.read(reinterpret_cast<char*>(values.data()),
          static_cast<std::streamsize>(count * sizeof(float)));
  if (in.gcount() != static_cast<std::streamsize>(count * sizeof(float))) {
    throw IoError("short read from " + file.string());
  }
  fix_endianness(std::span<float>(values));
  return values;
}

}  // namespace

std::string_view to_string(StoreKind kind) {
  return kind == StoreKind::Isolated ? "isolated" : "contextual_pair";
}

std::string pair_key(std::string_view left, std::string_view right) {
  std::string key;
  key.reserve(left.size() + right.size() + 1);
  key.append(left).push_back('\t');
  key.append(right);
  return key;
}

std::string layer_file_name(int layer) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "layer_%03d.bin", layer);
  return buf;
}

std::string pair_layer_file_name(int layer, bool left) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "layer_%03d.%s.bin", layer, left ? "left" : "right");
  return buf;
}

void write_le(fs::path const& file, std::span<float const> values) {
  write_raw(file, values);
}

void write_le(fs::path const& file, std::span<double const> values) {
  write_raw(file, values);
}

std::vector<double> read_le_f64(fs::path const& file) {
  std::ifstream in(file, std::ios::binary | std::ios::ate);
  if (!in) throw IoError("cannot open " + file.string());
  auto const bytes = static_cast<std::size_t>(in.tellg());
  if (bytes % sizeof(double) != 0) throw IoError("truncated float64 file " + file.string());
  in.seekg(0);
  std::vector<double> values(bytes / sizeof(double));
  in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(bytes));
  if (!in) throw IoError("short read from " + file.string());
  fix_endianness(std::span<double>(values));
  return values;
}

void write_store(StoreManifest const& manifest, std::span<FloatMatrix const> layers,
                 fs::path const& dir) {
  if (manifest.kind != StoreKind::Isolated) {
    throw ValidationError("write_store needs an isolated manifest");
  }
  check_manifest(manifest);
  if (layers.size() != static_cast<std::size_t>(manifest.layer_count())) {
    throw ValidationError("expected " + std::to_string(manifest.layer_count()) +
                          " layer matrices, got " + std::to_string(layers.size()));
  }
  for (int l = 0; l < manifest.layer_count(); ++l) check_matrix(manifest, layers[l], l, "matrix");

  prepare_dir(dir);
  for (int l = 0; l < manifest.layer_count(); ++l) {
    auto const& mat = layers[l];
    write_le(dir / layer_file_name(l),
             std::span<float const>(mat.data(), static_cast<std::size_t>(mat.size())));
  }
  write_manifest(manifest, dir);
}

void write_pair_store(StoreManifest const& manifest, std::span<PairLayer const> layers,
                      fs::path const& dir) {
  if (manifest.kind != StoreKind::ContextualPair) {
    throw ValidationError("write_pair_store needs a contextual_pair manifest");
  }
  check_manifest(manifest);
  for (auto const& key : manifest.items) {
    if (std::count(key.begin(), key.end(), '\t') != 1) {
      throw ValidationError("pair item \"" + key + "\" is not a pair_key");
    }
  }
  if (layers.size() != static_cast<std::size_t>(manifest.layer_count())) {
    throw ValidationError("expected " + std::to_string(manifest.layer_count()) +
                          " pair layers, got " + std::to_string(layers.size()));
  }
  for (int l = 0; l < manifest.layer_count(); ++l) {
    check_matrix(manifest, layers[l].left, l, "left");
    check_matrix(manifest, layers[l].right, l, "right");
  }

  prepare_dir(dir);
  for (int l = 0; l < manifest.layer_count(); ++l) {
    for (bool left : {true, false}) {
      auto const& mat = left ? layers[l].left : layers[l].right;
      write_le(dir / pair_layer_file_name(l, left),
               std::span<float const>(mat.data(), static_cast<std::size_t>(mat.size())));
    }
  }
  write_manifest(manifest, dir);
}

EmbeddingStore EmbeddingStore::open(fs::path const& dir) {
  EmbeddingStore store;
  store.dir_ = dir;
  store.manifest_ = read_manifest(dir);
  check_manifest(store.manifest_);
  store.index_.reserve(store.manifest_.items.size());
  for (std::size_t i = 0; i < store.manifest_.items.size(); ++i) {
    store.index_.emplace(store.manifest_.items[i], i);
  }
  return store;
}

bool EmbeddingStore::contains(std::string_view key) const {
  return index_.count(std::string(key)) > 0;
}

bool EmbeddingStore::contains_pair(std::string_view left, std::string_view right) const {
  return index_.count(pair_key(left, right)) > 0;
}

void EmbeddingStore::check_layer(int layer) const {
  if (layer < 0 || layer > manifest_.num_layers) {
    throw ValidationError("layer " + std::to_string(layer) + " outside 0.." +
                          std::to_string(manifest_.num_layers));
  }
}

std::size_t EmbeddingStore::row_of(std::string const& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) throw MissingKeyError(key);
  return it->second;
}

FloatMatrix EmbeddingStore::read_rows(fs::path const& file,
                                      std::span<std::size_t const> rows) const {
  auto const d = static_cast<std::size_t>(manifest_.dim);
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot open " + file.string());
  FloatMatrix out(static_cast<Eigen::Index>(rows.size()), manifest_.dim);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    in.seekg(static_cast<std::streamoff>(rows[i] * d * sizeof(float)));
    in.read(reinterpret_cast<char*>(out.row(static_cast<Eigen::Index>(i)).data()),
            static_cast<std::streamsize>(d * sizeof(float)));
    if (!in) throw IoError("short read from " + file.string());
  }
  fix_endianness(std::span<float>(out.data(), static_cast<std::size_t>(out.size())));
  return out;
}

FloatMatrix EmbeddingStore::load_layer(int layer) const {
  check_layer(layer);
  if (kind() != StoreKind::Isolated) throw ValidationError("store is not isolated");
  auto const n = manifest_.items.size();
  auto values = read_floats(dir_ / layer_file_name(layer), n * manifest_.dim);
  return Eigen::Map<FloatMatrix>(values.data(), static_cast<Eigen::Index>(n), manifest_.dim);
}

PairLayer EmbeddingStore::load_pair_layer(int layer) const {
  check_layer(layer);
  if (kind() != StoreKind::ContextualPair) throw ValidationError("store is not a pair store");
  auto const n = manifest_.items.size();
  PairLayer out;
  for (bool left : {true, false}) {
    auto values = read_floats(dir_ / pair_layer_file_name(layer, left), n * manifest_.dim);
    (left ? out.left : out.right) =
        Eigen::Map<FloatMatrix>(values.data(), static_cast<Eigen::Index>(n), manifest_.dim);
  }
  return out;
}

FloatMatrix EmbeddingStore::read_vectors(int layer, std::span<std::string const> keys) const {
  check_layer(layer);
  if (kind() != StoreKind::Isolated) throw ValidationError("store is not isolated");
  std::vector<std::size_t> rows;
  rows.reserve(keys.size());
  for (auto const& key : keys) rows.push_back(row_of(key));
  return read_rows(dir_ / layer_file_name(layer), rows);
}

PairVectors EmbeddingStore::read_pair_vectors(
    int layer, std::span<std::pair<std::string, std::string> const> pairs) const {
  check_layer(layer);
  if (kind() != StoreKind::ContextualPair) throw ValidationError("store is not a pair store");
  std::vector<std::size_t> rows;
  rows.reserve(pairs.size());
  for (auto const& [l, r] : pairs) rows.push_back(row_of(pair_key(l, r)));
  return {read_rows(dir_ / pair_layer_file_name(layer, true), rows),
          read_rows(dir_ / pair_layer_file_name(layer, false), rows)};
}

StoreReport validate_store(fs::path const& dir) {
  StoreReport report;
  auto add = [&](std::string finding) { report.findings.push_back(std::move(finding)); };

  StoreManifest m;
  try {
    m = read_manifest(dir);
    check_manifest(m);
  } catch (Error const& e) {
    add(e.what());
    return report;
  }

  bool const pairs = m.kind == StoreKind::ContextualPair;
  std::vector<std::string> expected;
  for (int l = 0; l < m.layer_count(); ++l) {
    if (pairs) {
      expected.push_back(pair_layer_file_name(l, true));
      expected.push_back(pair_layer_file_name(l, false));
    } else {
      expected.push_back(layer_file_name(l));
    }
  }

  std::uintmax_t const want_bytes = m.items.size() * static_cast<std::uintmax_t>(m.dim) * 4;
  for (int l = 0; l < m.layer_count(); ++l) {
    for (int side = 0; side < (pairs ? 2 : 1); ++side) {
      std::string const name = pairs ? pair_layer_file_name(l, side == 0) : layer_file_name(l);
      fs::path const file = dir / name;
      std::error_code ec;
      if (!fs::is_regular_file(file, ec)) {
        add("missing layer file " + name);
        continue;
      }
      auto const bytes = fs::file_size(file, ec);
      if (ec || bytes != want_bytes) {
        add("size mismatch layer " + std::to_string(l) + " (" + name + ": expected " +
            std::to_string(want_bytes) + " bytes, found " + std::to_string(bytes) + ")");
        continue;
      }
      auto const values = read_floats(file, m.items.size() * m.dim);
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
          add("non-finite value layer " + std::to_string(l) + " row " +
              std::to_string(i / m.dim) + " col " + std::to_string(i % m.dim) + " (" + name +
              ")");
          break;
        }
      }
    }
  }

  static std::regex const layer_re(R"(layer_(\d+)(\.left|\.right)?\.bin)");
  std::set<std::string> stray;
  std::error_code ec;
  for (auto const& entry : fs::directory_iterator(dir, ec)) {
    std::string const name = entry.path().filename().string();
    if (std::regex_match(name, layer_re) &&
        std::find(expected.begin(), expected.end(), name) == expected.end()) {
      stray.insert(name);
    }
  }
  for (auto const& name : stray) {
    add("unexpected layer file " + name + " (manifest declares layers 0.." +
        std::to_string(m.num_layers) + ")");
  }
  return report;
}

}  // namespace subcomp
