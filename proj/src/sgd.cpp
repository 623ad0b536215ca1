// Copyright 2026 The aldp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "aldp/sgd.hpp"

#include <cmath>
#include <numeric>

#include "aldp/error.hpp"
#include "aldp/gaussian_calibration.hpp"
#include "aldp/numeric.hpp"

namespace aldp {

std::string to_string(Task task) {
  switch (task) {
    case Task::linear: return "linear";
    case Task::logistic: return "logistic";
    case Task::svm: return "svm";
  }
  return "unknown";
}

Task task_from_string(const std::string& name) {
  if (name == "linear") return Task::linear;
  if (name == "logistic") return Task::logistic;
  if (name == "svm") return Task::svm;
  throw Error("unknown task: " + name);
}

std::string to_string(SgdMechanism mechanism) {
  switch (mechanism) {
    case SgdMechanism::non_private: return "nonprivate";
    case SgdMechanism::mech1: return "mech1";
    case SgdMechanism::mech2: return "mech2";
    case SgdMechanism::gaussian: return "optgm";
  }
  return "unknown";
}

SgdMechanism sgd_mechanism_from_string(const std::string& name) {
  if (name == "nonprivate" || name == "none") return SgdMechanism::non_private;
  if (name == "mech1") return SgdMechanism::mech1;
  if (name == "mech2") return SgdMechanism::mech2;
  if (name == "optgm" || name == "gaussian") return SgdMechanism::gaussian;
  throw Error("unknown sgd mechanism: " + name);
}

TrainingData with_bias_column(const std::vector<std::vector<double>>& features,
                              const std::vector<double>& labels) {
  if (features.size() != labels.size()) throw DimensionMismatch("features/labels size mismatch");
  TrainingData data;
  data.features.reserve(features.size());
  for (const auto& row : features) {
    std::vector<double> extended = row;
    extended.push_back(1.0);
    data.features.push_back(std::move(extended));
  }
  data.labels = labels;
  return data;
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

void check_sample(Task task, std::span<const double> theta, std::span<const double> x, double y) {
  if (theta.size() != x.size()) throw DimensionMismatch("theta and sample widths differ");
  if (task != Task::linear && std::abs(y) != 1.0) {
    throw Error("classification labels must be -1 or +1");
  }
}

}  // namespace

std::vector<double> gradient(Task task, std::span<const double> theta,
                             std::span<const double> x, double y) {
  check_sample(task, theta, x, y);
  std::vector<double> grad(x.size(), 0.0);
  switch (task) {
    case Task::linear: {
      const double residual = dot(theta, x) - y;
      for (size_t i = 0; i < x.size(); ++i) grad[i] = residual * x[i];
      break;
    }
    case Task::logistic: {
      const double margin = y * dot(theta, x);
      // -y x / (1 + e^margin); the factor underflows harmlessly for large
      // margins.
      const double scale = margin > 35.0 ? 0.0 : -y / (1.0 + std::exp(margin));
      for (size_t i = 0; i < x.size(); ++i) grad[i] = scale * x[i];
      break;
    }
    case Task::svm: {
      if (y * dot(theta, x) < 1.0) {
        for (size_t i = 0; i < x.size(); ++i) grad[i] = -y * x[i];
      }
      break;
    }
  }
  return grad;
}

double sample_loss(Task task, std::span<const double> theta, std::span<const double> x, double y) {
  check_sample(task, theta, x, y);
  switch (task) {
    case Task::linear: {
      const double residual = dot(theta, x) - y;
      return 0.5 * residual * residual;
    }
    case Task::logistic: {
      const double margin = y * dot(theta, x);
      return margin > 0.0 ? std::log1p(std::exp(-margin)) : -margin + std::log1p(std::exp(margin));
    }
    case Task::svm:
      return std::max(0.0, 1.0 - y * dot(theta, x));
  }
  return 0.0;
}

std::vector<double> clip_gradient(std::vector<double> grad) {
  for (double& g : grad) {
    if (!std::isfinite(g)) throw NonFiniteInput("non-finite gradient component");
    g = std::clamp(g, -1.0, 1.0);
  }
  return grad;
}

TrainingRun private_sgd_train(const TrainingData& data, const ModelSpec& spec,
                              SgdMechanism mechanism, const PrivacyBudget& budget,
                              RandomSource& rng, double gaussian_sigma_override) {
  const size_t n = data.size();
  const int d = spec.dimension;
  if (spec.batch_size < 1 || spec.learning_rate <= 0.0) throw Error("bad model spec");
  if (n < static_cast<size_t>(spec.batch_size)) {
    throw InsufficientUsers("dataset smaller than one batch");
  }
  if (!data.features.empty() && static_cast<int>(data.features[0].size()) != d) {
    throw DimensionMismatch("feature width != spec dimension");
  }

  // Stream tags keep the shuffle and the per-user perturbation independent of
  // each other while both derive from the caller's seed.
  constexpr uint64_t kShuffleStream = 0x53481ab2d1c0ull;
  constexpr uint64_t kUserStream = 0x9e21f7305744ull;

  // Shuffle once; consecutive slices form disjoint batches, so each user
  // participates in at most one iteration.
  std::vector<uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  RandomSource shuffle_rng = RandomSource::derive(rng.seed(), stream_key(kShuffleStream, 0));
  for (size_t i = n - 1; i > 0; --i) {
    const size_t j = shuffle_rng.uniform_int(i + 1);
    std::swap(order[i], order[j]);
  }

  Mech1Params mech1 = mechanism == SgdMechanism::mech1
                          ? Mech1Params::make(d, budget)
                          : Mech1Params{budget, 0, {}};
  double sigma = gaussian_sigma_override;
  if (mechanism == SgdMechanism::gaussian && sigma <= 0.0) {
    sigma = optimal_sigma(budget, 2.0 * std::sqrt(static_cast<double>(d))).sigma;
  }

  TrainingRun run;
  run.mechanism = mechanism;
  std::vector<double> theta(d, 0.0);
  const size_t iterations = n / static_cast<size_t>(spec.batch_size);
  run.theta_history.reserve(iterations);
  run.batch_losses.reserve(iterations);

  std::vector<double> mean_grad(d);
  for (size_t t = 0; t < iterations; ++t) {
    std::fill(mean_grad.begin(), mean_grad.end(), 0.0);
    double batch_loss = 0.0;
    for (int b = 0; b < spec.batch_size; ++b) {
      const uint32_t user = order[t * spec.batch_size + b];
      const auto& x = data.features[user];
      const double y = data.labels[user];
      batch_loss += sample_loss(spec.task, theta, x, y);
      std::vector<double> grad = clip_gradient(gradient(spec.task, theta, x, y));
      if (mechanism != SgdMechanism::non_private) {
        RandomSource user_rng = RandomSource::derive(rng.seed(), stream_key(kUserStream, user));
        switch (mechanism) {
          case SgdMechanism::mech1:
            grad = mech1_perturb(grad, mech1, user_rng).values;
            break;
          case SgdMechanism::mech2:
            grad = mech2_perturb(grad, budget, user_rng).values;
            break;
          case SgdMechanism::gaussian:
            grad = gaussian_perturb_numeric(grad, sigma, user_rng).values;
            break;
          default:
            break;
        }
      }
      for (int i = 0; i < d; ++i) mean_grad[i] += grad[i];
    }
    for (int i = 0; i < d; ++i) {
      theta[i] -= spec.learning_rate * mean_grad[i] / spec.batch_size;
    }
    run.batch_losses.push_back(batch_loss / spec.batch_size);
    run.theta_history.push_back(theta);
    run.users_consumed += spec.batch_size;
  }
  return run;
}

double evaluate(std::span<const double> theta, const TrainingData& test_set, Task task) {
  if (test_set.size() == 0) throw Error("empty test set");
  double total = 0.0;
  for (size_t i = 0; i < test_set.size(); ++i) {
    const double score = dot(theta, test_set.features[i]);
    if (task == Task::linear) {
      const double err = score - test_set.labels[i];
      total += err * err;
    } else {
      const double predicted = score >= 0.0 ? 1.0 : -1.0;
      total += predicted != test_set.labels[i] ? 1.0 : 0.0;
    }
  }
  return total / static_cast<double>(test_set.size());
}

}  // namespace aldp
