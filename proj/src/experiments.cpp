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

#include "aldp/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "aldp/categorical.hpp"
#include "aldp/csv.hpp"
#include "aldp/error.hpp"
#include "aldp/gaussian_calibration.hpp"
#include "aldp/numeric.hpp"
#include "aldp/synthetic.hpp"

namespace aldp {

namespace {

// Stream tags; each experiment family draws data and per-user randomness
// from disjoint derived streams of the master seed.
constexpr uint64_t kMeanData = 0x6d65616e64617461ull;
constexpr uint64_t kMeanUser = 0x6d65616e75736572ull;
constexpr uint64_t kFreqData = 0x6672657164617461ull;
constexpr uint64_t kFreqUser = 0x6672657175736572ull;
constexpr uint64_t kTrainData = 0x747261696e646174ull;
constexpr uint64_t kTrainRun = 0x747261696e72756eull;

struct CompareRecords {
  bool operator()(const MseRecord& a, const MseRecord& b) const {
    return std::tie(a.width, a.mechanism, a.epsilon, a.delta, a.rep) <
           std::tie(b.width, b.mechanism, b.epsilon, b.delta, b.rep);
  }
};

}  // namespace

void parallel_for(size_t jobs, int threads, const std::function<void(size_t)>& body) {
  int worker_count = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  worker_count = std::max(1, std::min<int>(worker_count, static_cast<int>(jobs)));
  if (worker_count == 1) {
    for (size_t i = 0; i < jobs; ++i) body(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= jobs) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(worker_count);
  for (int t = 0; t < worker_count; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

double median(std::vector<double> values) {
  if (values.empty()) throw Error("median of empty set");
  std::sort(values.begin(), values.end());
  const size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

double max_admissible_delta(int d) {
  return 0.999 / static_cast<double>(compute_Cd(d));
}

std::vector<MseRecord> run_mean_experiment(const MeanBenchConfig& config) {
  if (config.reps < 1 || config.epsilons.empty() || config.deltas.empty() || config.dims.empty()) {
    throw Error("mean bench: empty grid");
  }
  const size_t jobs = config.dims.size() * static_cast<size_t>(config.reps);
  std::vector<std::vector<MseRecord>> slots(jobs);

  parallel_for(jobs, config.threads, [&](size_t job) {
    const int d = config.dims[job / config.reps];
    const int rep = static_cast<int>(job % config.reps);

    RandomSource data_rng = RandomSource::derive(config.seed, stream_key(kMeanData, d, rep));
    const Dataset data = gen_gaussian_numeric(config.n, d, data_rng);
    std::vector<double> true_mean(d, 0.0);
    for (const auto& row : data.numeric) {
      for (int j = 0; j < d; ++j) true_mean[j] += row[j];
    }
    for (double& m : true_mean) m /= static_cast<double>(config.n);

    std::vector<double> sums(d);
    for (const std::string& mech : config.mechanisms) {
      for (double eps : config.epsilons) {
        for (double delta : config.deltas) {
          const PrivacyBudget budget(eps, delta);
          Mech1Params mech1{budget, 0, {}};
          double sigma = 0.0;
          if (mech == "mech1") {
            mech1 = Mech1Params::make(d, budget);
          } else if (mech == "optgm") {
            sigma = optimal_sigma(budget, 2.0 * std::sqrt(static_cast<double>(d))).sigma;
          } else if (mech != "mech2") {
            throw Error("mean bench: unknown mechanism " + mech);
          }

          std::fill(sums.begin(), sums.end(), 0.0);
          for (uint64_t i = 0; i < config.n; ++i) {
            RandomSource rng = RandomSource::derive(config.seed, stream_key(kMeanUser, rep, i));
            NumericReport report =
                mech == "mech1"  ? mech1_perturb(data.numeric[i], mech1, rng)
                : mech == "mech2" ? mech2_perturb(data.numeric[i], budget, rng)
                                  : gaussian_perturb_numeric(data.numeric[i], sigma, rng);
            for (int j = 0; j < d; ++j) sums[j] += report.values[j];
          }
          double mse = 0.0;
          for (int j = 0; j < d; ++j) {
            const double err = sums[j] / static_cast<double>(config.n) - true_mean[j];
            mse += err * err;
          }
          mse /= d;
          slots[job].push_back(MseRecord{mech, eps, delta, d, config.n, rep, mse});
        }
      }
    }
  });

  std::vector<MseRecord> records;
  for (auto& slot : slots) {
    records.insert(records.end(), slot.begin(), slot.end());
  }
  std::sort(records.begin(), records.end(), CompareRecords{});
  if (!config.out.empty()) write_mse_csv(config.out, records);
  return records;
}

std::vector<MseRecord> run_freq_experiment(const FreqBenchConfig& config) {
  if (config.reps < 1 || config.epsilons.empty() || config.deltas.empty() ||
      config.domains.empty()) {
    throw Error("freq bench: empty grid");
  }
  const size_t jobs = config.domains.size() * static_cast<size_t>(config.reps);
  std::vector<std::vector<MseRecord>> slots(jobs);

  parallel_for(jobs, config.threads, [&](size_t job) {
    const uint32_t k = config.domains[job / config.reps];
    const int rep = static_cast<int>(job % config.reps);

    RandomSource data_rng = RandomSource::derive(config.seed, stream_key(kFreqData, k, rep));
    const Dataset data = gen_zipf_categorical(config.n, k, config.zipf_s, data_rng);
    std::vector<double> true_freq(k, 0.0);
    for (const auto& row : data.categorical) true_freq[row[0]] += 1.0;
    for (double& f : true_freq) f /= static_cast<double>(config.n);

    for (const std::string& name : config.protocols) {
      for (double eps : config.epsilons) {
        for (double delta : config.deltas) {
          const PrivacyBudget budget(eps, delta);
          ProtocolParams params =
              name == "grr"    ? grr_params(k, budget)
              : name == "sprr" ? sprr_params(k, budget)
              : name == "olh"  ? olh_params(k, budget)
              : name == "optgm" ? opt_gm_params(k, budget)
                                : throw Error("freq bench: unknown protocol " + name);
          SupportAccumulator acc(params);
          for (uint64_t i = 0; i < config.n; ++i) {
            RandomSource rng = RandomSource::derive(config.seed, stream_key(kFreqUser, rep, i));
            acc.add(perturb_categorical(data.categorical[i][0], params, rng));
          }
          const FrequencyEstimate estimate = acc.finalize();
          double mse = 0.0;
          for (uint32_t v = 0; v < k; ++v) {
            const double err = estimate.raw_frequencies[v] - true_freq[v];
            mse += err * err;
          }
          mse /= k;
          slots[job].push_back(
              MseRecord{name, eps, delta, static_cast<int>(k), config.n, rep, mse});
        }
      }
    }
  });

  std::vector<MseRecord> records;
  for (auto& slot : slots) {
    records.insert(records.end(), slot.begin(), slot.end());
  }
  std::sort(records.begin(), records.end(), CompareRecords{});
  if (!config.out.empty()) write_mse_csv(config.out, records);
  return records;
}

std::vector<VarianceRow> emit_variance_table(const VarianceTableConfig& config) {
  std::vector<VarianceRow> rows;
  for (double eps : config.epsilons) {
    for (double delta : config.deltas) {
      const PrivacyBudget budget(eps, delta);
      rows.push_back({"numeric", "onedim", eps, delta, 0, onedim_worst_variance(budget)});
      if (delta > 0.0) {
        const double sigma = optimal_sigma(budget, 2.0).sigma;
        rows.push_back({"numeric", "optgm", eps, delta, 0, sigma * sigma});
      }
      for (uint32_t k : config.domains) {
        rows.push_back({"categorical", "grr", eps, delta, static_cast<int>(k),
                        analytic_variance(grr_params(k, budget), 1, 0.0).approx});
      }
      const uint32_t k_any = config.domains.empty() ? 2 : config.domains.front();
      rows.push_back({"categorical", "sprr", eps, delta, 0,
                      analytic_variance(sprr_params(k_any, budget), 1, 0.0).approx});
      for (double q : config.prr_q) {
        rows.push_back({"categorical", "prr", eps, delta, static_cast<int>(q * 1e6),
                        analytic_variance(prr_params(k_any, budget, q), 1, 0.0).approx});
      }
      const uint32_t g = olh_optimal_g(budget);
      rows.push_back({"categorical", "olh", eps, delta, static_cast<int>(g),
                      analytic_variance(olh_params(k_any, budget), 1, 0.0).approx});
      if (delta > 0.0) {
        rows.push_back({"categorical", "optgm", eps, delta, 0,
                        analytic_variance(opt_gm_params(k_any, budget), 1, 0.0).approx});
      }
    }
  }
  if (!config.out.empty()) write_variance_csv(config.out, rows);
  return rows;
}

namespace {

// Hidden-parameter synthetic regression/classification data.
struct SyntheticTask {
  TrainingData train;
  TrainingData test;
  std::vector<double> theta_star;
};

SyntheticTask make_synthetic_task(Task task, uint64_t n_train, uint64_t n_test, int feature_dim,
                                  RandomSource& rng) {
  SyntheticTask out;
  out.theta_star.resize(feature_dim + 1);
  for (double& t : out.theta_star) t = 2.0 * rng.uniform() - 1.0;
  auto fill = [&](TrainingData& data, uint64_t n) {
    data.features.resize(n);
    data.labels.resize(n);
    for (uint64_t i = 0; i < n; ++i) {
      std::vector<double> x(feature_dim + 1, 1.0);  // trailing bias
      for (int j = 0; j < feature_dim; ++j) {
        x[j] = std::clamp(0.25 * rng.gaussian(), -1.0, 1.0);
      }
      double score = 0.0;
      for (int j = 0; j <= feature_dim; ++j) score += out.theta_star[j] * x[j];
      data.labels[i] = task == Task::linear ? score : (score >= 0.0 ? 1.0 : -1.0);
      data.features[i] = std::move(x);
    }
  };
  fill(out.train, n_train);
  fill(out.test, n_test);
  return out;
}

}  // namespace

TrainOutcome run_train_experiment(const TrainConfig& config) {
  RandomSource data_rng =
      RandomSource::derive(config.seed, stream_key(kTrainData, static_cast<uint64_t>(config.task)));
  SyntheticTask synthetic = make_synthetic_task(config.task, config.n, config.test_n,
                                                config.feature_dim, data_rng);
  const ModelSpec spec{config.task, config.feature_dim + 1, config.learning_rate,
                       config.batch_size};
  const PrivacyBudget budget(config.epsilon, config.delta);
  RandomSource run_rng = RandomSource::derive(config.seed, stream_key(kTrainRun, 0));
  TrainOutcome outcome;
  outcome.run = private_sgd_train(synthetic.train, spec, sgd_mechanism_from_string(config.mechanism),
                                  budget, run_rng);
  outcome.test_metrics.reserve(outcome.run.theta_history.size());
  for (const auto& theta : outcome.run.theta_history) {
    outcome.test_metrics.push_back(evaluate(theta, synthetic.test, config.task));
  }
  outcome.theta = outcome.run.theta_history.empty() ? std::vector<double>(config.feature_dim + 1)
                                                    : outcome.run.theta_history.back();
  outcome.final_test_metric = outcome.test_metrics.empty() ? 0.0 : outcome.test_metrics.back();

  if (!config.out.empty()) {
    CsvWriter writer(config.out);
    writer.write_row({"iteration", "loss", "test_metric"});
    for (size_t t = 0; t < outcome.test_metrics.size(); ++t) {
      writer.write_row({std::to_string(t + 1), format_double(outcome.run.batch_losses[t]),
                        format_double(outcome.test_metrics[t])});
    }
  }
  return outcome;
}

void write_mse_csv(const std::string& path, const std::vector<MseRecord>& records) {
  CsvWriter writer(path);
  writer.write_row({"mechanism", "epsilon", "delta", "width", "n", "rep", "mse"});
  for (const MseRecord& r : records) {
    writer.write_row({r.mechanism, format_double(r.epsilon), format_double(r.delta),
                      std::to_string(r.width), std::to_string(r.n), std::to_string(r.rep),
                      format_double(r.mse)});
  }
}

void write_variance_csv(const std::string& path, const std::vector<VarianceRow>& rows) {
  CsvWriter writer(path);
  writer.write_row({"section", "mechanism", "epsilon", "delta", "param", "variance"});
  for (const VarianceRow& r : rows) {
    writer.write_row({r.section, r.mechanism, format_double(r.epsilon), format_double(r.delta),
                      std::to_string(r.param), format_double(r.variance)});
  }
}

void write_manifest(const std::string& out_path, const std::string& command,
                    const std::vector<std::pair<std::string, std::string>>& fields) {
  nlohmann::json doc;
  doc["command"] = command;
  for (const auto& [key, value] : fields) doc[key] = value;
  std::ofstream out(out_path + ".manifest.json", std::ios::binary);
  if (!out) throw Error("cannot write manifest next to " + out_path);
  out << doc.dump(2) << "\n";
}

}  // namespace aldp
