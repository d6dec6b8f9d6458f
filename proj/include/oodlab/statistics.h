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

#ifndef OODLAB_STATISTICS_H_
#define OODLAB_STATISTICS_H_

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "oodlab/distributions.h"

namespace oodlab {

enum class StatisticKind { kLogLik, kTypicality, kLikelihoodRatio, kDoseLite };

std::string_view statistic_name(StatisticKind kind);
// Inverse of statistic_name; throws InvalidArgument for unknown names.
StatisticKind statistic_from_name(std::string_view name);

// Negative mean log-likelihood of the training set under `model`.
double estimate_entropy(const Distribution& model, std::span<const Sample> train);

// Silverman's rule of thumb, 0.9 min(sd, IQR / 1.34) n^(-1/5). Falls back to
// 1e-3 * max(1, |mean|) when the values have no spread.
double silverman_bandwidth(std::span<const double> values);

// A single-sample test statistic, fitted once and immutable afterwards.
//
// The orientation travels with the statistic so ROC code never has to guess:
// LogLik, LikelihoodRatio and DoseLite score in-distribution points high;
// Typicality (a distance) scores them low.
class FittedStatistic {
 public:
  static FittedStatistic log_lik(Distribution model);
  // |-log p(x) - H_hat| with H_hat = estimate_entropy(model, train).
  static FittedStatistic typicality(Distribution model, std::span<const Sample> train);
  static FittedStatistic typicality_with_entropy(Distribution model, double entropy_hat);
  // log p(x) - log q_alt(x).
  static FittedStatistic likelihood_ratio(Distribution model, Distribution alt_model);
  // Gaussian-kernel density of log p(x) among the training log-likelihoods.
  // Bandwidth defaults to silverman_bandwidth of those log-likelihoods.
  static FittedStatistic dose_lite(Distribution model, std::span<const Sample> train,
                                   std::optional<double> bandwidth = std::nullopt);
  static FittedStatistic dose_lite_from_loglikes(Distribution model,
                                                 std::vector<double> train_loglikes,
                                                 std::optional<double> bandwidth = std::nullopt);

  StatisticKind kind() const { return kind_; }
  bool larger_is_in() const { return kind_ != StatisticKind::kTypicality; }
  const Distribution& model() const { return model_; }
  const std::optional<Distribution>& alt_model() const { return alt_model_; }
  std::optional<double> train_entropy_hat() const { return entropy_hat_; }
  std::optional<double> bandwidth() const { return bandwidth_; }
  // Sorted training log-likelihoods (DoseLite only, else empty).
  const std::vector<double>& train_loglikes() const { return train_loglikes_; }

  double evaluate(const Sample& x) const;
  // Score as a function of the model log-likelihood alone; defined for every
  // kind except LikelihoodRatio.
  double evaluate_loglik(double log_p) const;
  std::vector<double> evaluate_all(std::span<const Sample> xs) const;

 private:
  FittedStatistic(StatisticKind kind, Distribution model) : kind_(kind), model_(std::move(model)) {}

  StatisticKind kind_;
  Distribution model_;
  std::optional<Distribution> alt_model_;
  std::optional<double> entropy_hat_;
  std::optional<double> bandwidth_;
  std::vector<double> train_loglikes_;
};

// Gaussian-kernel density estimate at `v` over sorted `centers`; kernels are
// truncated at 9 bandwidths.
double kernel_density(std::span<const double> sorted_centers, double bandwidth, double v);

// -log_prob_nats / (dims ln 2).
double bits_per_dimension(double log_prob_nats, std::size_t dims);

}  // namespace oodlab

#endif  // OODLAB_STATISTICS_H_
