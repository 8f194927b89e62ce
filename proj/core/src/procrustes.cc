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

#include "subcomp/procrustes.h"

#include <cmath>
#include <fstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "subcomp/embedding_store.h"
#include "subcomp/errors.h"

namespace subcomp {

ProcrustesMap fit_procrustes(Matrix const& x, Matrix const& y) {
  if (x.cols() == 0) throw DimensionError("procrustes: dimension must be positive");
  if (x.rows() == 0) throw DimensionError("procrustes: need at least one example");
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw DimensionError("procrustes: X is " + std::to_string(x.rows()) + "x" +
                         std::to_string(x.cols()) + " but Y is " + std::to_string(y.rows()) +
                         "x" + std::to_string(y.cols()));
  }
  if (!x.allFinite() || !y.allFinite()) {
    throw ValidationError("procrustes: non-finite input");
  }

  Matrix const cross = x.transpose() * y;
  Eigen::BDCSVD<Matrix> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);

  ProcrustesMap map;
  map.rotation = svd.matrixU() * svd.matrixV().transpose();
  map.singular_values = svd.singularValues();
  map.degenerate = svd.rank() < cross.cols();
  map.train_residual = (x * map.rotation - y).norm();
  return map;
}

Matrix apply(ProcrustesMap const& map, Matrix const& x) {
  if (x.cols() != map.dim()) {
    throw DimensionError("procrustes apply: rows have " + std::to_string(x.cols()) +
                         " columns, map is " + std::to_string(map.dim()) + "-dimensional");
  }
  return x * map.rotation;
}

double orthogonality_error(Matrix const& w) {
  Matrix const gram = w.transpose() * w;
  return (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

void write_map(ProcrustesMap const& map, std::filesystem::path const& stem) {
  auto bin = stem;
  bin += ".bin";
  auto meta = stem;
  meta += ".json";
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> const row_major =
      map.rotation;
  write_le(bin, std::span<double const>(row_major.data(),
                                        static_cast<std::size_t>(row_major.size())));
  nlohmann::json const doc{
      {"convention", std::string(kProcrustesConvention)},
      {"degenerate", map.degenerate},
      {"dim", map.dim()},
      {"singular_values",
       std::vector<double>(map.singular_values.data(),
                           map.singular_values.data() + map.singular_values.size())},
      {"train_residual", map.train_residual}};
  std::ofstream out(meta, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + meta.string());
  out << doc.dump(2) << '\n';
}

ProcrustesMap read_map(std::filesystem::path const& stem) {
  auto bin = stem;
  bin += ".bin";
  auto meta = stem;
  meta += ".json";
  std::ifstream in(meta, std::ios::binary);
  if (!in) throw IoError("cannot open " + meta.string());
  nlohmann::json doc;
  ProcrustesMap map;
  try {
    doc = nlohmann::json::parse(in);
    if (doc.at("convention").get<std::string>() != kProcrustesConvention) {
      throw ValidationError("map uses an unknown convention");
    }
    auto const d = doc.at("dim").get<Eigen::Index>();
    auto const values = read_le_f64(bin);
    if (static_cast<Eigen::Index>(values.size()) != d * d) {
      throw ValidationError("map file size does not match dim");
    }
    map.rotation = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                            Eigen::RowMajor> const>(values.data(), d, d);
    auto const sv = doc.at("singular_values").get<std::vector<double>>();
    map.singular_values = Eigen::Map<Vector const>(sv.data(), static_cast<Eigen::Index>(sv.size()));
    map.train_residual = doc.at("train_residual").get<double>();
    map.degenerate = doc.at("degenerate").get<bool>();
  } catch (nlohmann::json::exception const& e) {
    throw ValidationError(std::string("map sidecar: ") + e.what());
  }
  return map;
}

}  // namespace subcomp
