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

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "aldp/budget.hpp"
#include "aldp/sgd.hpp"

namespace aldp {

// One benchmark measurement. `width` is the tuple dimension d for mean
// estimation and the domain size k for frequency estimation.
struct MseRecord {
  std::string mechanism;
  double epsilon = 0.0;
  double delta = 0.0;
  int width = 0;
  uint64_t n = 0;
  int rep = 0;
  double mse = 0.0;
};

struct MeanBenchConfig {
  std::vector<std::string> mechanisms{"mech1", "mech2", "optgm"};
  std::vector<double> epsilons{0.5, 1.0, 2.0, 4.0};
  std::vector<double> deltas{1e-6};
  std::vector<int> dims{1, 5, 10};
  uint64_t n = 400000;
  int reps = 10;
  uint64_t seed = 1;
  int threads = 0;  // 0 = hardware concurrency
  std::string out;  // CSV path; empty disables file output
};

// Perturbs every tuple of a synthetic dataset per grid point, estimates the
// per-dimension means from the reports alone, and records the mean squared
// error against the dataset's true means. Per-user randomness is derived
// from (seed, rep, user), independent of mechanism and grid point, so runs
// at neighboring parameters share randomness and rows are reproducible
// regardless of thread scheduling.
std::vector<MseRecord> run_mean_experiment(const MeanBenchConfig& config);

struct FreqBenchConfig {
  std::vector<std::string> protocols{"grr", "sprr", "olh", "optgm"};
  std::vector<double> epsilons{0.5, 5.0};
  std::vector<double> deltas{1e-6};
  std::vector<uint32_t> domains{8, 32, 128};
  double zipf_s = 1.3;
  uint64_t n = 100000;
  int reps = 10;
  uint64_t seed = 1;
  int threads = 0;
  std::string out;
};

// Frequency analogue; MSE is computed on the raw (pre-clipping) estimates
// against the dataset's realized value frequencies.
std::vector<MseRecord> run_freq_experiment(const FreqBenchConfig& config);

struct VarianceTableConfig {
  std::vector<double> epsilons;
  std::vector<double> deltas{1e-6};
  std::vector<uint32_t> domains{2, 10, 100};  // k values for the value protocol
  std::vector<double> prr_q;                  // optional explicit q values
  std::string out;
};

struct VarianceRow {
  std::string section;   // "numeric" or "categorical"
  std::string mechanism;
  double epsilon = 0.0;
  double delta = 0.0;
  int param = 0;         // k for grr, g for olh, q*1e6 slot unused otherwise
  double variance = 0.0; // per-user worst-case / approximate variance
};

// Analytic worst-case variances: the one-dimensional numeric mechanism vs
// the calibrated Gaussian baseline (sensitivity 2), and the per-user
// aggregation variances of the categorical protocols (Gaussian baseline with
// sensitivity sqrt(2)).
std::vector<VarianceRow> emit_variance_table(const VarianceTableConfig& config);

struct TrainConfig {
  Task task = Task::linear;
  std::string mechanism = "nonprivate";
  double epsilon = 1.0;
  double delta = 1e-6;
  uint64_t n = 200000;
  uint64_t test_n = 20000;
  int feature_dim = 5;
  int batch_size = 1000;
  double learning_rate = 0.1;
  uint64_t seed = 1;
  std::string out;  // per-iteration CSV (iteration, loss, test metric)
};

struct TrainOutcome {
  TrainingRun run;
  std::vector<double> test_metrics;  // per iteration
  double final_test_metric = 0.0;
  std::vector<double> theta;
};

// Synthetic single-pass training: features ~ N(0, 1/16) clamped, labels from
// a hidden parameter vector (sign labels for the classification tasks).
TrainOutcome run_train_experiment(const TrainConfig& config);

// Largest delta that keeps C_d * delta < 1 with headroom; the hypercube
// mechanism rejects budgets above it at this dimension.
double max_admissible_delta(int d);

void write_mse_csv(const std::string& path, const std::vector<MseRecord>& records);
void write_variance_csv(const std::string& path, const std::vector<VarianceRow>& rows);

// Config echo written next to every experiment output, as
// "<out>.manifest.json". Keys are sorted, so bytes are reproducible.
void write_manifest(const std::string& out_path, const std::string& command,
                    const std::vector<std::pair<std::string, std::string>>& fields);

// Deterministic-result parallel loop (results must be written to
// preallocated per-job slots by the callback).
void parallel_for(size_t jobs, int threads, const std::function<void(size_t)>& body);

double median(std::vector<double> values);

}  // namespace aldp
