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

#ifndef SUBCOMP_PROCRUSTES_H_
#define SUBCOMP_PROCRUSTES_H_

// Orthogonal Procrustes alignment between a composed space X and a
// whole-word space Y, both n x d with one example per row.
//
// Row-vector convention: the fitted W minimizes ||X W - Y||_F over orthogonal
// d x d matrices. With U S V^T = SVD(X^T Y), W = U V^T. In the column-vector
// form (examples as columns, map applied on the left) this is the transpose
// of the same solution.
//
// No centering or scaling is applied to either side.

#include <filesystem>
#include <string_view>

#include "subcomp/types.h"

namespace subcomp {

inline constexpr std::string_view kProcrustesConvention = "row_vector:Y~X*W";

struct ProcrustesMap {
  Matrix rotation;         // W, d x d orthogonal
  Vector singular_values;  // of X^T Y, descending
  double train_residual = 0.0;  // ||X W - Y||_F on the fitting data
  /// Cross-covariance is rank deficient, so the minimizer is not unique and
  /// W is the solver's canonical choice.
  bool degenerate = false;

  Eigen::Index dim() const noexcept { return rotation.rows(); }
};

/// Throws DimensionError on shape problems, ValidationError on non-finite
/// input.
ProcrustesMap fit_procrustes(Matrix const& x, Matrix const& y);

/// Maps every row of `x`: returns x * W.
Matrix apply(ProcrustesMap const& map, Matrix const& x);

/// max |W^T W - I|.
double orthogonality_error(Matrix const& w);

/// Writes `<stem>.bin` (d x d float64 little-endian, row-major) and
/// `<stem>.json` (singular values, residual, degenerate flag, convention).
void write_map(ProcrustesMap const& map, std::filesystem::path const& stem);
ProcrustesMap read_map(std::filesystem::path const& stem);

}  // namespace subcomp

#endif  // SUBCOMP_PROCRUSTES_H_
