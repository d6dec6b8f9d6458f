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
#include <cmath>
#include <limits>
#include <numeric>

#include <gtest/gtest.h>

#include "oodlab/errors.h"

namespace oodlab {
namespace {

using Counts = std::vector<std::int64_t>;

constexpr double kNoClamp = -std::numeric_limits<double>::infinity();

TrainConfig config(double lr, std::size_t steps, double clamp = kDefaultClamp) {
  TrainConfig c;
  c.learning_rate = lr;
  c.steps = steps;
  c.clamp_c = clamp;
  return c;
}

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

// Central differences against the analytic gradient, as a relative vector error.
template <class F, class G>
double gradient_error(const std::vector<double>& logits, F objective, G gradient) {
  const double h = 1e-5;
  const std::vector<double> g = gradient(logits);
  double diff = 0.0, norm = 0.0;
  for (std::size_t k = 0; k < logits.size(); ++k) {
    std::vector<double> up = logits, down = logits;
    up[k] += h;
    down[k] -= h;
    const double fd = (objective(up) - objective(down)) / (2 * h);
    diff += (fd - g[k]) * (fd - g[k]);
    norm += g[k] * g[k];
  }
  return std::sqrt(diff) / std::max(std::sqrt(norm), 1e-12);
}

TEST(GridModel, SoftmaxInvariants) {
  const auto m = GridDensityModel::from_logits({0.0, 1.0, -2.0, 50.0});
  const auto p = m.probabilities();
  EXPECT_NEAR(sum(p), 1.0, 1e-12);
  for (double v : p) EXPECT_GT(v, 0.0);
  EXPECT_THROW(GridDensityModel::from_logits({}), InvalidArgument);
  EXPECT_THROW(GridDensityModel::from_logits({0.0, NAN}), InvalidArgument);
}

TEST(Gradient, MatchesFiniteDifferences) {
  Rng rng(10);
  const std::size_t k = 32;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> logits(k);
    for (auto& v : logits) v = 2 * rng.normal();
    Counts in(k), ood(k, 0);
    for (std::size_t i = 0; i < k; ++i) in[i] = static_cast<std::int64_t>(rng.uniform_index(20));
    for (std::size_t i = k - 6; i < k; ++i) {
      ood[i] = 1 + static_cast<std::int64_t>(rng.uniform_index(5));
    }
    in[0] += 1;
    EXPECT_LE(gradient_error(
                  logits, [&](const std::vector<double>& l) { return mle_objective(l, in); },
                  [&](const std::vector<double>& l) { return mle_gradient(l, in); }),
              1e-6);
    // Clamp placed mid-range so both branches occur.
    const std::vector<double> lp = GridDensityModel::from_logits(logits).log_probabilities();
    const double c = 0.5 * (lp[k - 1] + lp[k - 3]) + 1e-3;
    for (double clamp : {kDefaultClamp, c, kNoClamp}) {
      EXPECT_LE(gradient_error(
                    logits,
                    [&](const std::vector<double>& l) { return nt_objective(l, in, ood, clamp); },
                    [&](const std::vector<double>& l) { return nt_gradient(l, in, ood, clamp); }),
                1e-6);
    }
  }
}

TEST(Gradient, ClampedBinsHaveNoOodGradient) {
  const std::vector<double> logits = {0.0, 0.0, -40.0};
  const Counts in = {3, 1, 0}, ood = {0, 0, 5};
  EXPECT_EQ(nt_gradient(logits, in, ood, kDefaultClamp), mle_gradient(logits, in));
  EXPECT_NE(nt_gradient(logits, in, ood, kNoClamp), mle_gradient(logits, in));
}

TEST(MleFit, ConcentratedData) {
  const Counts in = {0, 0, 100, 0, 0};
  const auto fit = grid_mle_fit(in, config(1.0, 5000));
  EXPECT_GE(fit.model.probabilities()[2], 0.99);
  EXPECT_EQ(fit.objective_trace.size(), 5001u);
}

TEST(MleFit, SymmetricCounts) {
  const Counts in = {5, 2, 9, 2, 5};
  const auto p = grid_mle_fit(in, config(0.5, 300)).model.probabilities();
  EXPECT_DOUBLE_EQ(p[0], p[4]);
  EXPECT_DOUBLE_EQ(p[1], p[3]);
}

TEST(MleFit, ZeroLearningRateKeepsUniform) {
  const auto fit = grid_mle_fit(Counts{1, 2, 3}, config(0.0, 1));
  for (double v : fit.model.probabilities()) EXPECT_NEAR(v, 1.0 / 3, 1e-15);
}

TEST(MleFit, ObjectiveNondecreasingAtSmallRate) {
  Rng rng(3);
  for (std::size_t k : {2u, 17u, 256u}) {
    Counts in(k);
    for (auto& c : in) c = static_cast<std::int64_t>(rng.uniform_index(10));
    in[0] += 1;
    const auto fit = grid_mle_fit(in, config(0.1, 500));
    for (std::size_t s = 1; s < fit.objective_trace.size(); ++s) {
      ASSERT_GE(fit.objective_trace[s], fit.objective_trace[s - 1] - 1e-15) << k << " " << s;
    }
  }
}

TEST(MleFit, Errors) {
  EXPECT_THROW(grid_mle_fit(Counts{0, 0, 0}, config(1.0, 10)), InvalidArgument);
  EXPECT_THROW(grid_mle_fit(Counts{1, -1, 3}, config(1.0, 10)), InvalidArgument);
  EXPECT_THROW(grid_mle_fit(Counts{1, 2}, config(-1.0, 10)), InvalidArgument);
  EXPECT_THROW(grid_mle_fit(Counts{1, 2}, config(1.0, 0)), InvalidArgument);
}

TEST(NtFit, ZeroOodReproducesMle) {
  const Counts in = {4, 0, 7, 1, 0, 2};
  const auto mle = grid_mle_fit(in, config(0.7, 200));
  const auto nt = grid_nt_fit(in, Counts(6, 0), config(0.7, 200));
  EXPECT_EQ(mle.objective_trace, nt.objective_trace);
  EXPECT_EQ(mle.model.logits(), nt.model.logits());
}

TEST(NtFit, LengthMismatch) {
  EXPECT_THROW(grid_nt_fit(Counts{1, 2}, Counts{1, 2, 3}, config(1.0, 5)), InvalidArgument);
}

TEST(NtFit, NormalizedAtEveryStep) {
  const Counts in = {10, 5, 0, 0}, ood = {0, 0, 3, 3};
  for (std::size_t steps = 1; steps <= 30; ++steps) {
    EXPECT_NEAR(sum(grid_nt_fit(in, ood, config(1.0, steps)).model.probabilities()), 1.0, 1e-12);
  }
}

TEST(NtFit, DisjointBinsSeparatePerfectly) {
  Rng rng(4);
  const GridToy toy = make_grid_toy({}, rng);
  const auto nt = grid_nt_fit(toy.train_in, toy.train_ood, config(1.0, 2000));
  const auto p = nt.model.probabilities();
  double min_in = 1.0, max_ood = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (toy.train_in[k] > 0) min_in = std::min(min_in, p[k]);
    if (toy.ood_probs[k] > 0) max_ood = std::max(max_ood, p[k]);
  }
  EXPECT_LT(max_ood, min_in);
  EXPECT_EQ(*evaluate_grid(nt.model, toy.test_in, toy.test_ood).auc, 1.0);
}

TEST(NtFit, ClampStallsPushDown) {
  const Counts in = {50, 30, 20, 0}, ood = {0, 0, 0, 10};
  const double c = std::log(1e-9);
  const double clamped = grid_nt_fit(in, ood, config(1.0, 3000, c)).model.log_probabilities()[3];
  EXPECT_GE(clamped, c - 0.5);
  EXPECT_LE(clamped, c + 0.01);
  const double free =
      grid_nt_fit(in, ood, config(1.0, 3000, kNoClamp)).model.log_probabilities()[3];
  EXPECT_LT(free, c - 100);
}

TEST(Evaluate, TrueModelMatchesEntropy) {
  const std::vector<double> probs = {0.4, 0.3, 0.2, 0.1};
  std::vector<double> logits;
  for (double p : probs) logits.push_back(std::log(p));
  const auto model = GridDensityModel::from_logits(logits);
  Rng rng(8);
  Counts counts(4, 0);
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    std::size_t k = 0;
    double acc = probs[0];
    while (u >= acc && k < 3) acc += probs[++k];
    ++counts[k];
  }
  double h = 0.0, second = 0.0;
  for (double p : probs) {
    h -= p * std::log(p);
    second += p * std::log(p) * std::log(p);
  }
  const double se = std::sqrt((second - h * h) / n);
  const auto e = evaluate_grid(model, counts, Counts(4, 0));
  EXPECT_LE(std::abs(e.mean_ll_in + h), 3 * se);
  EXPECT_FALSE(e.auc.has_value());
  EXPECT_THROW(evaluate_grid(model, Counts(4, 0), counts), InvalidArgument);
  EXPECT_THROW(evaluate_grid(model, Counts(3, 1), counts), InvalidArgument);
}

TEST(Toy, Layout) {
  Rng rng(1);
  const GridToy toy = make_grid_toy({}, rng);
  EXPECT_EQ(toy.in_probs.size(), 64u);
  EXPECT_NEAR(sum(toy.in_probs), 1.0, 1e-12);
  EXPECT_NEAR(sum(toy.ood_probs), 1.0, 1e-12);
  for (std::size_t k = 0; k < 64; ++k) EXPECT_EQ(toy.in_probs[k] * toy.ood_probs[k], 0.0);
  EXPECT_EQ(std::accumulate(toy.train_in.begin(), toy.train_in.end(), std::int64_t{0}), 1000);
  EXPECT_THROW(make_grid_toy({.k = 10, .in_bins = 8, .ood_bins = 8}, rng), InvalidArgument);
}

TEST(Csv, Emitters) {
  const auto fit = grid_mle_fit(Counts{1, 2}, config(0.5, 3));
  const std::string trace = trace_to_csv(fit);
  EXPECT_EQ(trace.substr(0, trace.find('\n')), "step,objective");
  EXPECT_EQ(std::count(trace.begin(), trace.end(), '\n'), 5);
  const std::string probs = probabilities_to_csv(fit.model);
  EXPECT_EQ(probs.substr(0, probs.find('\n')), "bin,probability");
}

}  // namespace
}  // namespace oodlab
