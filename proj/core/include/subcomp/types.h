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

#ifndef SUBCOMP_TYPES_H_
#define SUBCOMP_TYPES_H_

#include <Eigen/Dense>

namespace subcomp {

/// Analysis-side matrices. Rows are examples.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Storage-side matrices, row-major float32 exactly as laid out on disk.
using FloatMatrix =
    Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace subcomp

#endif  // SUBCOMP_TYPES_H_
