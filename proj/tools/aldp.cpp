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

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aldp/audit.hpp"
#include "aldp/categorical.hpp"
#include "aldp/csv.hpp"
#include "aldp/dataset.hpp"
#include "aldp/error.hpp"
#include "aldp/experiments.hpp"
#include "aldp/gaussian_calibration.hpp"
#include "aldp/numeric.hpp"
#include "aldp/report_io.hpp"
#include "aldp/sgd.hpp"

namespace {

using aldp::PrivacyBudget;

std::vector<std::pair<std::string, std::string>> manifest_fields(
    std::initializer_list<std::pair<std::string, std::string>> fields) {
  return {fields};
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out.push_back(',');
    out += parts[i];
  }
  return out;
}

template <typename T>
std::string join_values(const std::vector<T>& values) {
  std::vector<std::string> parts;
  for (const T& v : values) {
    if constexpr (std::is_floating_point_v<T>) {
      parts.push_back(aldp::format_double(v));
    } else {
      parts.push_back(std::to_string(v));
    }
  }
  return join(parts);
}

int run_perturb(const std::string& in, const std::string& schema, const std::string& column,
                const std::string& mechanism, double eps, double delta, uint64_t seed,
                const std::string& out) {
  const aldp::Dataset data = aldp::load_dataset(in, schema);
  const PrivacyBudget budget(eps, delta);

  // Categorical protocols write the binary report container; numeric
  // mechanisms write one CSV row of report values per user.
  const bool categorical = mechanism == "grr" || mechanism == "sprr" || mechanism == "olh" ||
                           mechanism == "optgm-cat";
  if (categorical) {
    size_t col = 0;
    if (!column.empty()) {
      const auto it = std::find(data.categorical_names.begin(), data.categorical_names.end(),
                                column);
      if (it == data.categorical_names.end()) throw aldp::Error("no categorical column " + column);
      col = static_cast<size_t>(it - data.categorical_names.begin());
    } else if (data.categorical_width() != 1) {
      throw aldp::Error("--column required when the dataset has several categorical columns");
    }
    const uint32_t k = data.domain_sizes[col];
    aldp::ProtocolParams params = mechanism == "grr"    ? aldp::grr_params(k, budget)
                                  : mechanism == "sprr" ? aldp::sprr_params(k, budget)
                                  : mechanism == "olh"  ? aldp::olh_params(k, budget)
                                                        : aldp::opt_gm_params(k, budget);
    std::vector<aldp::CategoricalReport> reports;
    reports.reserve(data.size());
    for (size_t i = 0; i < data.size(); ++i) {
      aldp::RandomSource rng = aldp::RandomSource::derive(seed, i);
      reports.push_back(aldp::perturb_categorical(data.categorical[i][col], params, rng));
    }
    aldp::write_reports(out, params, reports);
  } else {
    const int d = static_cast<int>(data.numeric_width());
    if (d == 0) throw aldp::Error("dataset has no numeric columns");
    aldp::Mech1Params mech1{budget, 0, {}};
    double sigma = 0.0;
    if (mechanism == "mech1") {
      mech1 = aldp::Mech1Params::make(d, budget);
    } else if (mechanism == "optgm") {
      sigma = aldp::optimal_sigma(budget, 2.0 * std::sqrt(static_cast<double>(d))).sigma;
    } else if (mechanism != "mech2") {
      throw aldp::Error("unknown mechanism: " + mechanism);
    }
    aldp::CsvWriter writer(out);
    std::vector<std::string> header;
    for (const std::string& name : data.numeric_names) header.push_back(name);
    writer.write_row(header);
    for (size_t i = 0; i < data.size(); ++i) {
      aldp::RandomSource rng = aldp::RandomSource::derive(seed, i);
      const aldp::NumericReport report =
          mechanism == "mech1"   ? aldp::mech1_perturb(data.numeric[i], mech1, rng)
          : mechanism == "mech2" ? aldp::mech2_perturb(data.numeric[i], budget, rng)
                                 : aldp::gaussian_perturb_numeric(data.numeric[i], sigma, rng);
      std::vector<std::string> row;
      for (double v : report.values) row.push_back(aldp::format_double(v));
      writer.write_row(row);
    }
  }
  aldp::write_manifest(out, "perturb",
                       manifest_fields({{"input", in},
                                        {"schema", schema},
                                        {"mechanism", mechanism},
                                        {"epsilon", aldp::format_double(eps)},
                                        {"delta", aldp::format_double(delta)},
                                        {"seed", std::to_string(seed)}}));
  std::printf("wrote %s\n", out.c_str());
  return 0;
}

int run_estimate(const std::string& reports_path, const std::string& out) {
  const aldp::ReportFile file = aldp::read_reports(reports_path);
  const aldp::FrequencyEstimate estimate = aldp::estimate_frequencies(file.reports, file.params);
  aldp::CsvWriter writer(out);
  writer.write_row({"value", "estimated_count", "raw_frequency", "frequency"});
  for (uint32_t v = 0; v < file.params.k; ++v) {
    // values are reported 1-based in CSV
    writer.write_row({std::to_string(v + 1), aldp::format_double(estimate.counts[v]),
                      aldp::format_double(estimate.raw_frequencies[v]),
                      aldp::format_double(estimate.frequencies[v])});
  }
  aldp::write_manifest(out, "estimate",
                       manifest_fields({{"reports", reports_path},
                                        {"protocol", aldp::to_string(file.params.protocol)},
                                        {"n", std::to_string(file.reports.size())}}));
  std::printf("wrote %s\n", out.c_str());
  return 0;
}

int run_audit_command(const std::string& mechanism, int d, uint32_t k, uint32_t g, double eps,
                      double delta) {
  aldp::AuditResult result;
  if (mechanism == "onedim") {
    result = aldp::audit_onedim(PrivacyBudget(eps, delta));
  } else if (mechanism == "mech1" || mechanism == "mech1-inclusive") {
    result = aldp::audit_mech1(d, PrivacyBudget(eps, delta),
                               mechanism == "mech1" ? aldp::TieRule::strict
                                                    : aldp::TieRule::inclusive);
  } else if (mechanism == "duchi" || mechanism == "duchi-fixed-strict" ||
             mechanism == "duchi-fixed-inclusive") {
    const aldp::DuchiVariant variant = mechanism == "duchi" ? aldp::DuchiVariant::original
                                       : mechanism == "duchi-fixed-strict"
                                           ? aldp::DuchiVariant::fixed_strict
                                           : aldp::DuchiVariant::fixed_inclusive;
    result = aldp::audit_duchi(d, eps, variant);
  } else if (mechanism == "grr") {
    result = aldp::audit_value_protocol(aldp::grr_params(k, PrivacyBudget(eps, delta)));
  } else if (mechanism == "lh" || mechanism == "olh") {
    const PrivacyBudget budget(eps, delta);
    result = aldp::audit_value_protocol(mechanism == "olh"
                                            ? aldp::olh_params(k, budget)
                                            : aldp::lh_params(k, budget, g));
  } else if (mechanism == "sprr") {
    result = aldp::audit_bit_protocol(aldp::sprr_params(k, PrivacyBudget(eps, delta)));
  } else if (mechanism == "prr") {
    const PrivacyBudget budget(eps, delta);
    result = aldp::audit_bit_protocol(aldp::prr_params(k, budget, 1.0 / (std::exp(eps) + 1.0)));
  } else {
    throw aldp::Error("unknown audit target: " + mechanism);
  }
  std::printf("%s\n", aldp::describe(result).c_str());
  return result.pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Locally private mean/frequency estimation toolkit"};
  app.require_subcommand(1);

  uint64_t seed = 1;
  app.add_option("--seed", seed, "Master seed for all randomness")->capture_default_str();

  // perturb
  auto* perturb = app.add_subcommand("perturb", "Perturb a dataset into reports");
  std::string in_path, schema_path, column, mechanism = "mech1", out_path = "reports.out";
  double eps = 1.0, delta = 1e-6;
  perturb->add_option("--in", in_path, "Input CSV")->required();
  perturb->add_option("--schema", schema_path, "JSON schema sidecar")->required();
  perturb->add_option("--column", column, "Categorical column to perturb");
  perturb->add_option("--mechanism", mechanism,
                      "mech1|mech2|optgm (numeric) or grr|sprr|olh|optgm-cat (categorical)");
  perturb->add_option("--eps", eps, "Privacy budget epsilon");
  perturb->add_option("--delta", delta, "Privacy budget delta");
  perturb->add_option("--out", out_path, "Output path")->required();

  // estimate
  auto* estimate = app.add_subcommand("estimate", "Aggregate categorical reports");
  std::string reports_path, est_out = "estimates.csv";
  estimate->add_option("--reports", reports_path, "Binary report file")->required();
  estimate->add_option("--out", est_out, "Output CSV")->required();

  // bench-mean
  auto* bench_mean = app.add_subcommand("bench-mean", "Mean-estimation error sweep");
  aldp::MeanBenchConfig mean_config;
  std::vector<std::string> mean_mechs = mean_config.mechanisms;
  bench_mean->add_option("--mechanisms", mean_mechs, "mech1,mech2,optgm")->delimiter(',');
  bench_mean->add_option("--eps", mean_config.epsilons, "epsilon list")->delimiter(',');
  bench_mean->add_option("--delta", mean_config.deltas, "delta list")->delimiter(',');
  bench_mean->add_option("--dims", mean_config.dims, "dimension list")->delimiter(',');
  bench_mean->add_option("--n", mean_config.n, "users per run");
  bench_mean->add_option("--reps", mean_config.reps, "repetitions");
  bench_mean->add_option("--threads", mean_config.threads, "worker threads (0 = auto)");
  bench_mean->add_option("--out", mean_config.out, "Output CSV")->required();
  bool mean_quick = false;
  bench_mean->add_flag("--quick", mean_quick, "n=50000, reps=5");

  // bench-freq
  auto* bench_freq = app.add_subcommand("bench-freq", "Frequency-estimation error sweep");
  aldp::FreqBenchConfig freq_config;
  std::vector<std::string> freq_protocols = freq_config.protocols;
  bench_freq->add_option("--protocols", freq_protocols, "grr,sprr,olh,optgm")->delimiter(',');
  bench_freq->add_option("--eps", freq_config.epsilons, "epsilon list")->delimiter(',');
  bench_freq->add_option("--delta", freq_config.deltas, "delta list")->delimiter(',');
  bench_freq->add_option("--domain", freq_config.domains, "domain size list")->delimiter(',');
  bench_freq->add_option("--zipf-s", freq_config.zipf_s, "Zipf exponent");
  bench_freq->add_option("--n", freq_config.n, "users per run");
  bench_freq->add_option("--reps", freq_config.reps, "repetitions");
  bench_freq->add_option("--threads", freq_config.threads, "worker threads (0 = auto)");
  bench_freq->add_option("--out", freq_config.out, "Output CSV")->required();
  bool freq_quick = false;
  bench_freq->add_flag("--quick", freq_quick, "n=50000, reps=5");

  // variance-table
  auto* var_table = app.add_subcommand("variance-table", "Analytic worst-case variances");
  aldp::VarianceTableConfig var_config;
  var_config.epsilons = {0.5, 1, 2, 4, 6, 8, 10};
  var_table->add_option("--eps", var_config.epsilons, "epsilon list")->delimiter(',');
  var_table->add_option("--delta", var_config.deltas, "delta list")->delimiter(',');
  var_table->add_option("--domain", var_config.domains, "k list for the value protocol")
      ->delimiter(',');
  var_table->add_option("--prr-q", var_config.prr_q, "explicit q values for the bit protocol")
      ->delimiter(',');
  var_table->add_option("--out", var_config.out, "Output CSV")->required();

  // train
  auto* train = app.add_subcommand("train", "Private single-pass SGD on synthetic data");
  aldp::TrainConfig train_config;
  std::string task_name = "linear";
  train->add_option("--task", task_name, "linear|logistic|svm");
  train->add_option("--mechanism", train_config.mechanism, "nonprivate|mech1|mech2|optgm");
  train->add_option("--eps", train_config.epsilon, "epsilon");
  train->add_option("--delta", train_config.delta, "delta");
  train->add_option("--n", train_config.n, "training users");
  train->add_option("--test-n", train_config.test_n, "test users");
  train->add_option("--dims", train_config.feature_dim, "feature dimension (bias added)");
  train->add_option("--batch", train_config.batch_size, "batch size");
  train->add_option("--lr", train_config.learning_rate, "learning rate");
  train->add_option("--out", train_config.out, "Per-iteration CSV")->required();

  // audit
  auto* audit = app.add_subcommand("audit", "Exact privacy audit of a discrete mechanism");
  std::string audit_mech = "onedim";
  int audit_d = 1;
  uint32_t audit_k = 4, audit_g = 2;
  double audit_eps = 1.0, audit_delta = 0.0;
  audit->add_option("--mechanism", audit_mech,
                    "onedim|mech1|mech1-inclusive|duchi|duchi-fixed-strict|duchi-fixed-inclusive|"
                    "grr|prr|sprr|lh|olh");
  audit->add_option("--d", audit_d, "tuple dimension (numeric mechanisms)");
  audit->add_option("--domain", audit_k, "domain size k (categorical protocols)");
  audit->add_option("--g", audit_g, "hash range (lh)");
  audit->add_option("--eps", audit_eps, "epsilon");
  audit->add_option("--delta", audit_delta, "delta");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*perturb) return run_perturb(in_path, schema_path, column, mechanism, eps, delta, seed,
                                     out_path);
    if (*estimate) return run_estimate(reports_path, est_out);
    if (*bench_mean) {
      mean_config.mechanisms = mean_mechs;
      mean_config.seed = seed;
      if (mean_quick) {
        mean_config.n = 50000;
        mean_config.reps = 5;
      }
      aldp::run_mean_experiment(mean_config);
      aldp::write_manifest(
          mean_config.out, "bench-mean",
          manifest_fields({{"mechanisms", join(mean_config.mechanisms)},
                           {"eps", join_values(mean_config.epsilons)},
                           {"delta", join_values(mean_config.deltas)},
                           {"dims", join_values(mean_config.dims)},
                           {"n", std::to_string(mean_config.n)},
                           {"reps", std::to_string(mean_config.reps)},
                           {"seed", std::to_string(mean_config.seed)}}));
      std::printf("wrote %s\n", mean_config.out.c_str());
      return 0;
    }
    if (*bench_freq) {
      freq_config.protocols = freq_protocols;
      freq_config.seed = seed;
      if (freq_quick) {
        freq_config.n = 50000;
        freq_config.reps = 5;
      }
      aldp::run_freq_experiment(freq_config);
      aldp::write_manifest(
          freq_config.out, "bench-freq",
          manifest_fields({{"protocols", join(freq_config.protocols)},
                           {"eps", join_values(freq_config.epsilons)},
                           {"delta", join_values(freq_config.deltas)},
                           {"domain", join_values(freq_config.domains)},
                           {"zipf_s", aldp::format_double(freq_config.zipf_s)},
                           {"n", std::to_string(freq_config.n)},
                           {"reps", std::to_string(freq_config.reps)},
                           {"seed", std::to_string(freq_config.seed)}}));
      std::printf("wrote %s\n", freq_config.out.c_str());
      return 0;
    }
    if (*var_table) {
      aldp::emit_variance_table(var_config);
      aldp::write_manifest(var_config.out, "variance-table",
                           manifest_fields({{"eps", join_values(var_config.epsilons)},
                                            {"delta", join_values(var_config.deltas)},
                                            {"domain", join_values(var_config.domains)}}));
      std::printf("wrote %s\n", var_config.out.c_str());
      return 0;
    }
    if (*train) {
      train_config.task = aldp::task_from_string(task_name);
      train_config.seed = seed;
      const double max_delta = aldp::max_admissible_delta(train_config.feature_dim + 1);
      if (train_config.mechanism == "mech1" && train_config.delta > max_delta) {
        std::fprintf(stderr,
                     "warning: delta %g exceeds the admissible %g at dimension %d; expect the "
                     "mechanism to reject it\n",
                     train_config.delta, max_delta, train_config.feature_dim + 1);
      }
      const aldp::TrainOutcome outcome = aldp::run_train_experiment(train_config);
      aldp::write_manifest(
          train_config.out, "train",
          manifest_fields({{"task", task_name},
                           {"mechanism", train_config.mechanism},
                           {"eps", aldp::format_double(train_config.epsilon)},
                           {"delta", aldp::format_double(train_config.delta)},
                           {"n", std::to_string(train_config.n)},
                           {"dims", std::to_string(train_config.feature_dim)},
                           {"batch", std::to_string(train_config.batch_size)},
                           {"lr", aldp::format_double(train_config.learning_rate)},
                           {"seed", std::to_string(train_config.seed)}}));
      std::printf("final test metric: %s\nwrote %s\n",
                  aldp::format_double(outcome.final_test_metric).c_str(),
                  train_config.out.c_str());
      return 0;
    }
    if (*audit) {
      return run_audit_command(audit_mech, audit_d, audit_k, audit_g, audit_eps, audit_delta);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
