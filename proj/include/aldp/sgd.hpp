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

#pragma once

#include <span>
#include <string>
#include <vector>

#include "aldp/budget.hpp"
#include "aldp/random.hpp"

namespace aldp {

enum class Task { linear, logistic, svm };

std::string to_string(Task task);
Task task_from_string(const std::string& name);

// Model/training configuration. `dimension` counts the bias term: feature
// vectors are expected to carry a trailing constant-1 component.
struct ModelSpec {
  Task task;
  int dimension;
  double learning_rate = 0.1;
  int batch_size = 1000;
};

// Feature rows (bias column included) with labels; labels are real for the
// linear task and in {-1, +1} for logistic/svm.
struct TrainingData {
  std::vector<std::vector<double>> features;
  std::vector<double> labels;
  size_t size() const { return features.size(); }
};

// Appends a constant-1 bias column to every row.
TrainingData with_bias_column(const std::vector<std::vector<double>>& features,
                              const std::vector<double>& labels);

// Per-sample loss gradient at theta. linear: (theta.x - y) x;
// logistic: -y x / (1 + exp(y theta.x)); svm hinge: -y x when y theta.x < 1.
std::vector<double> gradient(Task task, std::span<const double> theta,
                             std::span<const double> x, double y);

// Per-sample loss, the quantity `gradient` differentiates.
double sample_loss(Task task, std::span<const double> theta, std::span<const double> x, double y);

// Componentwise clamp to [-1, 1], the domain the perturbation mechanisms
// expect.
std::vector<double> clip_gradient(std::vector<double> grad);

enum class SgdMechanism { non_private, mech1, mech2, gaussian };

std::string to_string(SgdMechanism mechanism);
SgdMechanism sgd_mechanism_from_string(const std::string& name);

struct TrainingRun {
  std::vector<std::vector<double>> theta_history;  // theta after each iteration
  std::vector<double> batch_losses;                // mean batch loss before each update
  uint64_t users_consumed = 0;
  SgdMechanism mechanism;
};

// Single-pass minibatch gradient descent where every user participates in at
// most one batch. Users are shuffled, each user in the batch computes her
// gradient at the current theta, clips it componentwise, perturbs it with the
// full budget (one release per user makes composition across iterations
// unnecessary) and the batch mean of the perturbed gradients drives the
// update. non_private clips but skips perturbation. Gaussian noise uses the
// tight calibration with sensitivity 2 sqrt(d), the l2 diameter of the
// clipped gradient domain; gaussian_sigma_override > 0 replaces the
// calibrated scale (noise-scale studies, zero-noise limits).
TrainingRun private_sgd_train(const TrainingData& data, const ModelSpec& spec,
                              SgdMechanism mechanism, const PrivacyBudget& budget,
                              RandomSource& rng, double gaussian_sigma_override = 0.0);

// linear: mean squared prediction error; logistic/svm: sign mismatch rate.
double evaluate(std::span<const double> theta, const TrainingData& test_set, Task task);

}  // namespace aldp
