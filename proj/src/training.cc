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

#include "oodlab/training.h"

#include <algorithm>
#include <numeric>

#include "oodlab/csv.h"
#include "oodlab/distributions.h"
#include "oodlab/errors.h"
#include "oodlab/testing.h"

namespace oodlab {
namespace {

std::vector<double> log_softmax(std::span<const double> logits) {
  const double lse = log_sum_exp(logits);
  std::vector<double> out(logits.size());
  for (std::size_t k = 0; k < logits.size(); ++k) out[k] = logits[k] - lse;
  return out;
}

// Normalized weights counts / total, or empty when the total is zero.
std::vector<double> frequencies(std::span<const std::int64_t> counts) {
  std::int64_t total = 0;
  for (std::int64_t c : counts) {
    if (c < 0) throw InvalidArgument("counts must be nonnegative");
    total += c;
  }
  if (total == 0) return {};
  std::vector<double> w(counts.size());
  for (std::size_t k = 0; k < counts.size(); ++k) {
    w[k] = static_cast<double>(counts[k]) / static_cast<double>(total);
  }
  return w;
}

std::vector<double> in_frequencies(std::span<const std::int64_t> counts_in) {
  std::vector<double> w = frequencies(counts_in);
  if (w.empty()) throw InvalidArgument("in-distribution counts must have a positive total");
  return w;
}

void check_lengths(std::span<const double> logits, std::span<const std::int64_t> counts) {
  if (logits.size() != counts.size()) throw InvalidArgument("count vector length != K");
}

void check_config(const TrainConfig& config) {
  if (!(config.learning_rate >= 0.0) || !std::isfinite(config.learning_rate)) {
    throw InvalidArgument("learning rate must be finite and nonnegative");
  }
  if (config.steps < 1) throw InvalidArgument("steps must be at least 1");
  if (std::isnan(config.clamp_c)) throw InvalidArgument("clamp must not be NaN");
}

// sum_k w_k (e_k - pi) = w - pi * sum(w)
void add_loglik_gradient(std::span<const double> w, std::span<const double> probs, double sign,
                         std::vector<double>& grad) {
  const double mass = std::accumulate(w.begin(), w.end(), 0.0);
  for (std::size_t k = 0; k < grad.size(); ++k) grad[k] += sign * (w[k] - probs[k] * mass);
}

template <class Objective, class Gradient>
FitResult ascend(std::size_t k, const TrainConfig& config, Objective objective, Gradient gradient) {
  std::vector<double> logits(k, 0.0);
  FitResult fit{GridDensityModel::uniform(k), {}};
  fit.objective_trace.reserve(config.steps + 1);
  fit.objective_trace.push_back(objective(logits));
  for (std::size_t step = 0; step < config.steps; ++step) {
    const std::vector<double> g = gradient(logits);
    for (std::size_t i = 0; i < k; ++i) logits[i] += config.learning_rate * g[i];
    fit.objective_trace.push_back(objective(logits));
  }
  fit.model = GridDensityModel::from_logits(std::move(logits));
  return fit;
}

std::vector<std::int64_t> draw_counts(const std::vector<double>& probs, std::size_t n, Rng& rng) {
  const Distribution dist = Distribution::finite_discrete(probs);
  std::vector<std::int64_t> counts(probs.size(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    ++counts[static_cast<std::size_t>(std::get<IndexPoint>(sample_one(dist, rng))[0])];
  }
  return counts;
}

}  // namespace

GridDensityModel GridDensityModel::uniform(std::size_t k) {
  if (k == 0) throw InvalidArgument("grid must have at least one bin");
  return GridDensityModel(std::vector<double>(k, 0.0));
}

GridDensityModel GridDensityModel::from_logits(std::vector<double> logits) {
  if (logits.empty()) throw InvalidArgument("grid must have at least one bin");
  for (double v : logits) {
    if (!std::isfinite(v)) throw InvalidArgument("logits must be finite");
  }
  return GridDensityModel(std::move(logits));
}

std::vector<double> GridDensityModel::log_probabilities() const { return log_softmax(logits_); }

std::vector<double> GridDensityModel::probabilities() const {
  std::vector<double> lp = log_probabilities();
  for (double& v : lp) v = std::exp(v);
  return lp;
}

double mle_objective(std::span<const double> logits, std::span<const std::int64_t> counts_in) {
  check_lengths(logits, counts_in);
  const std::vector<double> w = in_frequencies(counts_in);
  const std::vector<double> lp = log_softmax(logits);
  double value = 0.0;
  for (std::size_t k = 0; k < lp.size(); ++k) {
    if (w[k] > 0.0) value += w[k] * lp[k];
  }
  return value;
}

std::vector<double> mle_gradient(std::span<const double> logits,
                                 std::span<const std::int64_t> counts_in) {
  check_lengths(logits, counts_in);
  const std::vector<double> w = in_frequencies(counts_in);
  std::vector<double> probs = log_softmax(logits);
  for (double& v : probs) v = std::exp(v);
  std::vector<double> grad(logits.size(), 0.0);
  add_loglik_gradient(w, probs, 1.0, grad);
  return grad;
}

double nt_objective(std::span<const double> logits, std::span<const std::int64_t> counts_in,
                    std::span<const std::int64_t> counts_ood, double clamp_c) {
  check_lengths(logits, counts_ood);
  double value = mle_objective(logits, counts_in);
  const std::vector<double> w_ood = frequencies(counts_ood);
  if (w_ood.empty()) return value;
  const std::vector<double> lp = log_softmax(logits);
  for (std::size_t k = 0; k < lp.size(); ++k) {
    if (w_ood[k] > 0.0) value -= w_ood[k] * std::max(lp[k], clamp_c);
  }
  return value;
}

std::vector<double> nt_gradient(std::span<const double> logits,
                                std::span<const std::int64_t> counts_in,
                                std::span<const std::int64_t> counts_ood, double clamp_c) {
  check_lengths(logits, counts_ood);
  std::vector<double> grad = mle_gradient(logits, counts_in);
  std::vector<double> w_ood = frequencies(counts_ood);
  if (w_ood.empty()) return grad;
  const std::vector<double> lp = log_softmax(logits);
  std::vector<double> probs(lp.size());
  for (std::size_t k = 0; k < lp.size(); ++k) {
    probs[k] = std::exp(lp[k]);
    // Clamped bins contribute a constant, hence no gradient.
    if (!(lp[k] > clamp_c)) w_ood[k] = 0.0;
  }
  add_loglik_gradient(w_ood, probs, -1.0, grad);
  return grad;
}

FitResult grid_mle_fit(std::span<const std::int64_t> counts_in, const TrainConfig& config) {
  check_config(config);
  in_frequencies(counts_in);
  return ascend(
      counts_in.size(), config,
      [&](const std::vector<double>& logits) { return mle_objective(logits, counts_in); },
      [&](const std::vector<double>& logits) { return mle_gradient(logits, counts_in); });
}

FitResult grid_nt_fit(std::span<const std::int64_t> counts_in,
                      std::span<const std::int64_t> counts_ood, const TrainConfig& config) {
  check_config(config);
  if (counts_in.size() != counts_ood.size()) {
    throw InvalidArgument("in and ood count vectors differ in length");
  }
  in_frequencies(counts_in);
  frequencies(counts_ood);
  const double c = config.clamp_c;
  return ascend(
      counts_in.size(), config,
      [&](const std::vector<double>& logits) {
        return nt_objective(logits, counts_in, counts_ood, c);
      },
      [&](const std::vector<double>& logits) {
        return nt_gradient(logits, counts_in, counts_ood, c);
      });
}

GridEvaluation evaluate_grid(const GridDensityModel& model, std::span<const std::int64_t> test_in,
                             std::span<const std::int64_t> test_ood) {
  if (test_in.size() != model.size() || test_ood.size() != model.size()) {
    throw InvalidArgument("test count vectors must have length K");
  }
  const std::vector<double> w_in = frequencies(test_in);
  if (w_in.empty()) throw InvalidArgument("test_in must have a positive total");
  const std::vector<double> w_ood = frequencies(test_ood);
  const std::vector<double> lp = model.log_probabilities();

  GridEvaluation eval;
  eval.mean_ll_in = std::inner_product(w_in.begin(), w_in.end(), lp.begin(), 0.0);
  if (!w_ood.empty()) {
    eval.mean_ll_ood = std::inner_product(w_ood.begin(), w_ood.end(), lp.begin(), 0.0);
    // Raw counts keep the AUC arithmetic exact.
    const std::vector<double> c_in(test_in.begin(), test_in.end());
    const std::vector<double> c_ood(test_ood.begin(), test_ood.end());
    eval.auc = weighted_roc_and_auc(lp, c_in, lp, c_ood, true).auc;
  }
  return eval;
}

GridToy make_grid_toy(const GridToyConfig& config, Rng& rng) {
  if (config.in_bins == 0 || config.ood_bins == 0 ||
      config.in_bins + config.ood_bins > config.k) {
    throw InvalidArgument("toy needs 0 < in_bins, 0 < ood_bins, in_bins + ood_bins <= K");
  }
  if (config.n_train_in == 0 || config.n_test_in == 0) {
    throw InvalidArgument("toy needs positive in-distribution sample counts");
  }
  GridToy toy;
  toy.in_probs.assign(config.k, 0.0);
  toy.ood_probs.assign(config.k, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < config.in_bins; ++i) {
    toy.in_probs[i] = std::pow(static_cast<double>(i + 1), -config.zipf_exponent);
    total += toy.in_probs[i];
  }
  for (double& v : toy.in_probs) v /= total;
  for (std::size_t i = 0; i < config.ood_bins; ++i) {
    toy.ood_probs[config.in_bins + i] = 1.0 / static_cast<double>(config.ood_bins);
  }
  Rng train_in_rng = rng.split(0), train_ood_rng = rng.split(1);
  Rng test_in_rng = rng.split(2), test_ood_rng = rng.split(3);
  toy.train_in = draw_counts(toy.in_probs, config.n_train_in, train_in_rng);
  toy.train_ood = draw_counts(toy.ood_probs, config.n_train_ood, train_ood_rng);
  toy.test_in = draw_counts(toy.in_probs, config.n_test_in, test_in_rng);
  toy.test_ood = draw_counts(toy.ood_probs, config.n_test_ood, test_ood_rng);
  return toy;
}

std::string trace_to_csv(const FitResult& fit) {
  CsvTable table({"step", "objective"});
  for (std::size_t s = 0; s < fit.objective_trace.size(); ++s) {
    table.add_row({std::to_string(s), format_significant(fit.objective_trace[s])});
  }
  return table.str();
}

std::string probabilities_to_csv(const GridDensityModel& model) {
  CsvTable table({"bin", "probability"});
  const std::vector<double> probs = model.probabilities();
  for (std::size_t k = 0; k < probs.size(); ++k) {
    table.add_row({std::to_string(k), format_significant(probs[k])});
  }
  return table.str();
}

}  // namespace oodlab
