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

#ifndef SUBCOMP_CURVE_H_
#define SUBCOMP_CURVE_H_

#include <span>
#include <string>
#include <vector>

namespace subcomp {

struct LayerPoint {
  int layer = 0;
  std::vector<double> samples;  // one value per run
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
};

/// A metric as a function of layer, with the per-run samples kept.
struct LayerCurve {
  std::vector<LayerPoint> points;

  /// Appends a point, computing mean and population std of `samples`.
  void add(int layer, std::vector<double> samples);
  std::vector<int> layers() const;
};

double mean_of(std::span<double const> values);
double population_std(std::span<double const> values);

/// Identifies one curve in a result set.
struct CurveKey {
  std::string model;
  std::string task;    // geometry | word_type | word_length
  std::string op;      // add | multiply | absdiff | original | baseline
  std::string mode;    // isolated | contextual
  std::string filter;  // all | root | nonroot

  friend bool operator==(CurveKey const&, CurveKey const&) = default;
  friend auto operator<=>(CurveKey const&, CurveKey const&) = default;
};

struct CurveSeries {
  CurveKey key;
  LayerCurve curve;
};

using ResultSet = std::vector<CurveSeries>;

}  // namespace subcomp

#endif  // SUBCOMP_CURVE_H_
