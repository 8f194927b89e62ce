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

#ifndef SUBCOMP_PROBES_H_
#define SUBCOMP_PROBES_H_

// Linear probes over frozen representations: a logistic-regression word-type
// classifier and a linear-regression word-length regressor, both trained with
// minibatch Adam on raw (unstandardized) features.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "subcomp/types.h"

namespace subcomp {

enum class ProbeKind { Logistic, Linear };

std::string_view to_string(ProbeKind kind);

struct ProbeModel {
  Vector weights;
  double bias = 0.0;
  ProbeKind kind = ProbeKind::Logistic;

  /// Logistic: P(label = 1). Linear: the regression output.
  Vector predict(Matrix const& x) const;
  /// Logistic: 0/1 at threshold 0.5. Linear: rounded half away from zero.
  std::vector<int> predict_labels(Matrix const& x) const;
};

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  Vector m;
  Vector v;
  std::int64_t step = 0;
};

struct AdamUpdate {
  Vector params;
  AdamState state;
};

/// One bias-corrected Adam step. An empty state is treated as zero moments.
/// Throws ValidationError on a non-finite gradient.
AdamUpdate adam_step(Vector const& params, Vector const& grads, AdamState const& state,
                     AdamConfig const& config);

struct TrainConfig {
  int epochs = 3;
  int batch_size = 8;
  AdamConfig adam;
  std::uint64_t shuffle_seed = 0;
};

struct LossGradient {
  double loss = 0.0;
  Vector gradient;  // d weights followed by the bias
};

/// Mean binary cross-entropy on sigmoid outputs (Logistic) or mean squared
/// error (Linear) over the rows of `x`. `params` = [weights..., bias].
LossGradient probe_loss(ProbeKind kind, Vector const& params, Matrix const& x,
                        Vector const& targets);

/// Zero-initialized parameters, then epochs * ceil(n / batch) Adam steps over
/// a fresh seeded permutation each epoch. The last partial batch is kept.
/// Logistic labels must be 0/1, Linear labels positive.
ProbeModel train_probe(ProbeKind kind, Matrix const& x, std::span<int const> labels,
                       TrainConfig const& config);

enum class ProbeMetric { WeightedF1, RoundedAccuracy };

struct ProbeScore {
  ProbeMetric metric = ProbeMetric::WeightedF1;
  double value = 0.0;
};

/// Per-class F1 averaged with true-support weights. Undefined precision or
/// recall counts as F1 = 0 for that class.
double weighted_f1(std::span<int const> y_true, std::span<int const> y_pred);

/// Fraction of predictions that round (half away from zero) to the truth.
double rounded_accuracy(std::span<int const> y_true, std::span<double const> y_pred);

ProbeScore evaluate_probe(ProbeModel const& model, Matrix const& x,
                          std::span<int const> labels);

/// Chance-level reference averaged over `resamples` seeded draws.
/// Logistic: predictions sampled from the train-split class prior, scored by
/// weighted F1. Linear: predictions sampled uniformly from the distinct
/// train-split values, scored by rounded accuracy.
ProbeScore random_baseline(ProbeKind kind, std::span<int const> train_labels,
                           std::span<int const> test_labels, std::uint64_t seed,
                           int resamples = 100);

}  // namespace subcomp

#endif  // SUBCOMP_PROBES_H_
