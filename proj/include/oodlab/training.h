// Copyright 2026 The oodlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Finite categorical ("grid") density models trained by full-batch gradient
// ascent, either by maximum likelihood or with a negative-training term that
// pushes probability off a set of OOD bins.

#ifndef OODLAB_TRAINING_H_
#define OODLAB_TRAINING_H_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "oodlab/rng.h"

namespace oodlab {

// Softmax-parameterized categorical distribution over K bins.
class GridDensityModel {
 public:
  static GridDensityModel uniform(std::size_t k);
  static GridDensityModel from_logits(std::vector<double> logits);

  std::size_t size() const { return logits_.size(); }
  const std::vector<double>& logits() const { return logits_; }
  std::vector<double> log_probabilities() const;
  std::vector<double> probabilities() const;

 private:
  explicit GridDensityModel(std::vector<double> logits) : logits_(std::move(logits)) {}
  std::vector<double> logits_;
};

inline const double kDefaultClamp = std::log(1e-9);

struct TrainConfig {
  double learning_rate = 1.0;  // >= 0; zero leaves the model untouched
  std::size_t steps = 2000;
  // Floor for the OOD term: an OOD bin stops being pushed down once its log
  // probability is at or below clamp_c. -inf disables the floor.
  double clamp_c = kDefaultClamp;
  std::uint64_t seed = 0;
};

struct FitResult {
  GridDensityModel model;
  // Objective before the first step and after every step (steps + 1 values).
  std::vector<double> objective_trace;
};

// Mean log-likelihood of the in-distribution counts.
double mle_objective(std::span<const double> logits, std::span<const std::int64_t> counts_in);
std::vector<double> mle_gradient(std::span<const double> logits,
                                 std::span<const std::int64_t> counts_in);

// mean_in log p - mean_ood max(log p, c). The OOD term vanishes when
// counts_ood is all zero.
double nt_objective(std::span<const double> logits, std::span<const std::int64_t> counts_in,
                    std::span<const std::int64_t> counts_ood, double clamp_c);
std::vector<double> nt_gradient(std::span<const double> logits,
                                std::span<const std::int64_t> counts_in,
                                std::span<const std::int64_t> counts_ood, double clamp_c);

// Gradient ascent from uniform logits. Throws InvalidArgument for all-zero or
// negative counts, mismatched lengths, or an invalid config.
FitResult grid_mle_fit(std::span<const std::int64_t> counts_in, const TrainConfig& config);
FitResult grid_nt_fit(std::span<const std::int64_t> counts_in,
                      std::span<const std::int64_t> counts_ood, const TrainConfig& config);

struct GridEvaluation {
  double mean_ll_in = 0.0;
  std::optional<double> mean_ll_ood;  // empty when test_ood is all zero
  std::optional<double> auc;          // log-prob score, in vs ood
};

GridEvaluation evaluate_grid(const GridDensityModel& model, std::span<const std::int64_t> test_in,
                             std::span<const std::int64_t> test_ood);

// Synthetic disjoint-support problem: the in-distribution is Zipf-like
// (p_k proportional to (k + 1)^-exponent) on bins [0, in_bins); the OOD
// distribution is uniform on the next ood_bins bins; remaining bins are empty.
struct GridToyConfig {
  std::size_t k = 64;
  std::size_t in_bins = 48;
  std::size_t ood_bins = 8;
  double zipf_exponent = 1.5;
  std::size_t n_train_in = 1000;
  std::size_t n_train_ood = 200;
  std::size_t n_test_in = 1000;
  std::size_t n_test_ood = 200;
};

struct GridToy {
  std::vector<double> in_probs;
  std::vector<double> ood_probs;
  std::vector<std::int64_t> train_in, train_ood, test_in, test_ood;
};

GridToy make_grid_toy(const GridToyConfig& config, Rng& rng);

// CSV emitters: "step,objective" and "bin,probability".
std::string trace_to_csv(const FitResult& fit);
std::string probabilities_to_csv(const GridDensityModel& model);

}  // namespace oodlab

#endif  // OODLAB_TRAINING_H_
