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

#include "subcomp/curve.h"

#include <algorithm>
#include <cmath>
#include <utility>

namespace subcomp {

void LayerCurve::add(int layer, std::vector<double> samples) {
  LayerPoint p;
  p.layer = layer;
  p.mean = mean_of(samples);
  p.std = population_std(samples);
  p.samples = std::move(samples);
  points.push_back(std::move(p));
}

std::vector<int> LayerCurve::layers() const {
  std::vector<int> out;
  out.reserve(points.size());
  for (auto const& p : points) out.push_back(p.layer);
  return out;
}

double mean_of(std::span<double const> values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += v;
  auto const [lo, hi] = std::minmax_element(values.begin(), values.end());
  // Rounding in the sum can push the quotient just outside the sample range.
  return std::clamp(sum / static_cast<double>(values.size()), *lo, *hi);
}

double population_std(std::span<double const> values) {
  if (values.empty()) return 0.0;
  double const mean = mean_of(values);
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  return std::sqrt(sq / static_cast<double>(values.size()));
}

}  // namespace subcomp
