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

#include "oodlab/statistics.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "oodlab/errors.h"

namespace oodlab {
namespace {

constexpr double kKernelCutoff = 9.0;

double quantile_sorted(std::span<const double> sorted, double prob) {
  const double pos = prob * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::string_view statistic_name(StatisticKind kind) {
  switch (kind) {
    case StatisticKind::kLogLik:
      return "loglik";
    case StatisticKind::kTypicality:
      return "typicality";
    case StatisticKind::kLikelihoodRatio:
      return "likelihood_ratio";
    case StatisticKind::kDoseLite:
      return "dose_lite";
  }
  return "loglik";
}

StatisticKind statistic_from_name(std::string_view name) {
  for (auto kind : {StatisticKind::kLogLik, StatisticKind::kTypicality,
                    StatisticKind::kLikelihoodRatio, StatisticKind::kDoseLite}) {
    if (statistic_name(kind) == name) return kind;
  }
  throw InvalidArgument("unknown statistic '" + std::string(name) + "'");
}

double estimate_entropy(const Distribution& model, std::span<const Sample> train) {
  if (train.empty()) throw InvalidArgument("entropy estimate needs a non-empty training set");
  double total = 0.0;
  for (const auto& x : train) total += log_prob(model, x);
  return -total / static_cast<double>(train.size());
}

double silverman_bandwidth(std::span<const double> values) {
  if (values.empty()) throw InvalidArgument("bandwidth needs at least one value");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double mean = 0.0;
  for (double v : sorted) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : sorted) var += (v - mean) * (v - mean);
  const double sd = sorted.size() > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
  const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  double spread = sd;
  if (iqr > 0.0) spread = std::min(sd, iqr / 1.34);
  const double h = 0.9 * spread * std::pow(n, -0.2);
  if (h > 0.0 && std::isfinite(h)) return h;
  return 1e-3 * std::max(1.0, std::abs(mean));
}

FittedStatistic FittedStatistic::log_lik(Distribution model) {
  return FittedStatistic(StatisticKind::kLogLik, std::move(model));
}

FittedStatistic FittedStatistic::typicality(Distribution model, std::span<const Sample> train) {
  const double h = estimate_entropy(model, train);
  return typicality_with_entropy(std::move(model), h);
}

FittedStatistic FittedStatistic::typicality_with_entropy(Distribution model, double entropy_hat) {
  if (!std::isfinite(entropy_hat)) throw InvalidArgument("entropy estimate must be finite");
  FittedStatistic stat(StatisticKind::kTypicality, std::move(model));
  stat.entropy_hat_ = entropy_hat;
  return stat;
}

FittedStatistic FittedStatistic::likelihood_ratio(Distribution model, Distribution alt_model) {
  if (!(model.sample_space() == alt_model.sample_space())) {
    throw InvalidArgument("likelihood ratio needs models on one sample space");
  }
  FittedStatistic stat(StatisticKind::kLikelihoodRatio, std::move(model));
  stat.alt_model_ = std::move(alt_model);
  return stat;
}

FittedStatistic FittedStatistic::dose_lite(Distribution model, std::span<const Sample> train,
                                           std::optional<double> bandwidth) {
  if (train.empty()) throw InvalidArgument("dose_lite needs a non-empty training set");
  std::vector<double> loglikes = log_prob(model, train);
  return dose_lite_from_loglikes(std::move(model), std::move(loglikes), bandwidth);
}

FittedStatistic FittedStatistic::dose_lite_from_loglikes(Distribution model,
                                                         std::vector<double> train_loglikes,
                                                         std::optional<double> bandwidth) {
  if (train_loglikes.empty()) throw InvalidArgument("dose_lite needs training log-likelihoods");
  for (double v : train_loglikes) {
    if (!std::isfinite(v)) throw InvalidArgument("training log-likelihoods must be finite");
  }
  const double h = bandwidth ? *bandwidth : silverman_bandwidth(train_loglikes);
  if (!(h > 0.0) || !std::isfinite(h)) throw InvalidArgument("bandwidth must be positive");
  std::sort(train_loglikes.begin(), train_loglikes.end());
  FittedStatistic stat(StatisticKind::kDoseLite, std::move(model));
  stat.bandwidth_ = h;
  stat.train_loglikes_ = std::move(train_loglikes);
  return stat;
}

double FittedStatistic::evaluate_loglik(double log_p) const {
  switch (kind_) {
    case StatisticKind::kLogLik:
      return log_p;
    case StatisticKind::kTypicality:
      return std::abs(-log_p - *entropy_hat_);
    case StatisticKind::kDoseLite:
      return kernel_density(train_loglikes_, *bandwidth_, log_p);
    case StatisticKind::kLikelihoodRatio:
      break;
  }
  throw InvalidArgument("likelihood ratio is not a function of log p alone");
}

double FittedStatistic::evaluate(const Sample& x) const {
  const double lp = log_prob(model_, x);
  if (kind_ == StatisticKind::kLikelihoodRatio) return lp - log_prob(*alt_model_, x);
  return evaluate_loglik(lp);
}

std::vector<double> FittedStatistic::evaluate_all(std::span<const Sample> xs) const {
  std::vector<double> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(evaluate(x));
  return out;
}

double kernel_density(std::span<const double> sorted_centers, double bandwidth, double v) {
  if (!std::isfinite(v)) return 0.0;
  const auto lo = std::lower_bound(sorted_centers.begin(), sorted_centers.end(),
                                   v - kKernelCutoff * bandwidth);
  const auto hi = std::upper_bound(lo, sorted_centers.end(), v + kKernelCutoff * bandwidth);
  double total = 0.0;
  for (auto it = lo; it != hi; ++it) {
    const double u = (v - *it) / bandwidth;
    total += std::exp(-0.5 * u * u);
  }
  const double norm = static_cast<double>(sorted_centers.size()) * bandwidth *
                      std::sqrt(2.0 * std::numbers::pi);
  return total / norm;
}

double bits_per_dimension(double log_prob_nats, std::size_t dims) {
  if (dims == 0) throw InvalidArgument("dims must be positive");
  return -log_prob_nats / (static_cast<double>(dims) * std::numbers::ln2);
}

}  // namespace oodlab
