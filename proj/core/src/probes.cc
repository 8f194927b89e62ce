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

#include "subcomp/probes.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "subcomp/errors.h"
#include "subcomp/rng.h"

namespace subcomp {
namespace {

// log(1 + exp(z)) without overflow.
double softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  double const e = std::exp(z);
  return e / (1.0 + e);
}

void check_labels(ProbeKind kind, std::span<int const> labels) {
  for (int y : labels) {
    if (kind == ProbeKind::Logistic && y != 0 && y != 1) {
      throw ValidationError("logistic probe labels must be 0 or 1, got " + std::to_string(y));
    }
    if (kind == ProbeKind::Linear && y < 1) {
      throw ValidationError("linear probe targets must be positive, got " + std::to_string(y));
    }
  }
}

}  // namespace

std::string_view to_string(ProbeKind kind) {
  return kind == ProbeKind::Logistic ? "logistic" : "linear";
}

Vector ProbeModel::predict(Matrix const& x) const {
  if (x.cols() != weights.size()) throw DimensionError("probe: feature dimension mismatch");
  Vector z = x * weights;
  z.array() += bias;
  if (kind == ProbeKind::Logistic) z = z.unaryExpr([](double v) { return sigmoid(v); });
  return z;
}

std::vector<int> ProbeModel::predict_labels(Matrix const& x) const {
  Vector const out = predict(x);
  std::vector<int> labels(static_cast<std::size_t>(out.size()));
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    labels[i] = kind == ProbeKind::Logistic ? (out(i) >= 0.5 ? 1 : 0)
                                            : static_cast<int>(std::round(out(i)));
  }
  return labels;
}

AdamUpdate adam_step(Vector const& params, Vector const& grads, AdamState const& state,
                     AdamConfig const& config) {
  if (params.size() != grads.size()) throw DimensionError("adam: gradient size mismatch");
  if (!grads.allFinite()) throw ValidationError("adam: non-finite gradient");
  if (state.step < 0) throw ValidationError("adam: negative step counter");
  auto const n = params.size();
  Vector const m0 = state.m.size() == 0 ? Vector::Zero(n) : state.m;
  Vector const v0 = state.v.size() == 0 ? Vector::Zero(n) : state.v;
  if (m0.size() != n || v0.size() != n) throw DimensionError("adam: state size mismatch");

  AdamUpdate out;
  out.state.step = state.step + 1;
  out.state.m = config.beta1 * m0 + (1.0 - config.beta1) * grads;
  out.state.v = config.beta2 * v0 + (1.0 - config.beta2) * grads.cwiseProduct(grads);
  auto const t = static_cast<double>(out.state.step);
  double const m_corr = 1.0 - std::pow(config.beta1, t);
  double const v_corr = 1.0 - std::pow(config.beta2, t);
  out.params = params.array() - config.learning_rate * (out.state.m.array() / m_corr) /
                                    ((out.state.v.array() / v_corr).sqrt() + config.epsilon);
  return out;
}

LossGradient probe_loss(ProbeKind kind, Vector const& params, Matrix const& x,
                        Vector const& targets) {
  auto const d = x.cols();
  if (params.size() != d + 1) throw DimensionError("probe loss: params must be d + 1");
  if (targets.size() != x.rows()) throw DimensionError("probe loss: one target per row");
  if (x.rows() == 0) throw DimensionError("probe loss: empty batch");
  auto const n = static_cast<double>(x.rows());

  Vector z = x * params.head(d);
  z.array() += params(d);

  LossGradient out;
  Vector residual(x.rows());
  if (kind == ProbeKind::Logistic) {
    double loss = 0.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      // -y log s(z) - (1-y) log(1-s(z)) = softplus(z) - y z
      loss += softplus(z(i)) - targets(i) * z(i);
      residual(i) = sigmoid(z(i)) - targets(i);
    }
    out.loss = loss / n;
    residual /= n;
  } else {
    Vector const diff = z - targets;
    out.loss = diff.squaredNorm() / n;
    residual = 2.0 * diff / n;
  }
  out.gradient.resize(d + 1);
  out.gradient.head(d) = x.transpose() * residual;
  out.gradient(d) = residual.sum();
  return out;
}

ProbeModel train_probe(ProbeKind kind, Matrix const& x, std::span<int const> labels,
                       TrainConfig const& config) {
  if (static_cast<std::size_t>(x.rows()) != labels.size()) {
    throw DimensionError("train_probe: one label per row required");
  }
  if (x.rows() == 0) throw DimensionError("train_probe: no training rows");
  if (config.epochs < 1 || config.batch_size < 1 || !(config.adam.learning_rate > 0.0)) {
    throw ValidationError("train_probe: hyperparameters must be positive");
  }
  if (!x.allFinite()) throw ValidationError("train_probe: non-finite features");
  check_labels(kind, labels);

  auto const n = static_cast<std::size_t>(x.rows());
  auto const d = x.cols();
  Vector params = Vector::Zero(d + 1);
  AdamState state;
  std::vector<Eigen::Index> order(n);
  Rng rng(config.shuffle_seed);
  auto const batch = static_cast<std::size_t>(config.batch_size);

  Matrix xb;
  Vector yb;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    rng.shuffle(std::span<Eigen::Index>(order));
    for (std::size_t begin = 0; begin < n; begin += batch) {
      std::size_t const size = std::min(batch, n - begin);
      xb.resize(static_cast<Eigen::Index>(size), d);
      yb.resize(static_cast<Eigen::Index>(size));
      for (std::size_t k = 0; k < size; ++k) {
        auto const row = order[begin + k];
        xb.row(static_cast<Eigen::Index>(k)) = x.row(row);
        yb(static_cast<Eigen::Index>(k)) = labels[static_cast<std::size_t>(row)];
      }
      auto const lg = probe_loss(kind, params, xb, yb);
      auto update = adam_step(params, lg.gradient, state, config.adam);
      params = std::move(update.params);
      state = std::move(update.state);
    }
  }

  ProbeModel model;
  model.kind = kind;
  model.weights = params.head(d);
  model.bias = params(d);
  return model;
}

double weighted_f1(std::span<int const> y_true, std::span<int const> y_pred) {
  if (y_true.size() != y_pred.size()) throw DimensionError("weighted_f1: length mismatch");
  if (y_true.empty()) throw ValidationError("weighted_f1: empty input");
  struct Counts {
    std::size_t tp = 0, fp = 0, fn = 0, support = 0;
  };
  std::map<int, Counts> classes;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    auto& t = classes[y_true[i]];
    ++t.support;
    if (y_true[i] == y_pred[i]) {
      ++t.tp;
    } else {
      ++t.fn;
      ++classes[y_pred[i]].fp;
    }
  }
  double total = 0.0;
  for (auto const& [label, c] : classes) {
    if (c.support == 0) continue;
    double f1 = 0.0;
    if (c.tp > 0) {
      double const precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
      double const recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
      f1 = 2.0 * precision * recall / (precision + recall);
    }
    total += f1 * static_cast<double>(c.support);
  }
  return total / static_cast<double>(y_true.size());
}

double rounded_accuracy(std::span<int const> y_true, std::span<double const> y_pred) {
  if (y_true.size() != y_pred.size()) throw DimensionError("rounded_accuracy: length mismatch");
  if (y_true.empty()) throw ValidationError("rounded_accuracy: empty input");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    // std::round rounds halfway cases away from zero.
    if (std::round(y_pred[i]) == static_cast<double>(y_true[i])) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(y_true.size());
}

ProbeScore evaluate_probe(ProbeModel const& model, Matrix const& x,
                          std::span<int const> labels) {
  if (model.kind == ProbeKind::Logistic) {
    auto const pred = model.predict_labels(x);
    return {ProbeMetric::WeightedF1, weighted_f1(labels, pred)};
  }
  Vector const out = model.predict(x);
  std::vector<double> pred(out.data(), out.data() + out.size());
  return {ProbeMetric::RoundedAccuracy, rounded_accuracy(labels, pred)};
}

ProbeScore random_baseline(ProbeKind kind, std::span<int const> train_labels,
                           std::span<int const> test_labels, std::uint64_t seed,
                           int resamples) {
  if (train_labels.empty() || test_labels.empty()) {
    throw ValidationError("random_baseline: label lists must be non-empty");
  }
  if (resamples < 1) throw ValidationError("random_baseline: resamples must be positive");
  Rng rng(seed);
  double total = 0.0;
  std::vector<int> pred(test_labels.size());
  if (kind == ProbeKind::Logistic) {
    // Sampling a uniformly random train label is sampling from the prior.
    for (int r = 0; r < resamples; ++r) {
      for (auto& p : pred) p = train_labels[rng.uniform_index(train_labels.size())];
      total += weighted_f1(test_labels, pred);
    }
    return {ProbeMetric::WeightedF1, total / resamples};
  }
  std::set<int> const distinct(train_labels.begin(), train_labels.end());
  std::vector<int> const values(distinct.begin(), distinct.end());
  std::vector<double> pred_real(test_labels.size());
  for (int r = 0; r < resamples; ++r) {
    for (auto& p : pred_real) p = values[rng.uniform_index(values.size())];
    total += rounded_accuracy(test_labels, pred_real);
  }
  return {ProbeMetric::RoundedAccuracy, total / resamples};
}

}  // namespace subcomp
