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

#ifndef OODLAB_SCENARIOS_H_
#define OODLAB_SCENARIOS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "json.hpp"
#include "oodlab/distributions.h"
#include "oodlab/rng.h"
#include "oodlab/testing.h"

namespace oodlab {

// ---------------------------------------------------------------------------
// A misestimated model can beat the true one under support overlap.

// The distribution with density proportional to p/q.
//
// Diagonal Gaussians: completing the square per coordinate gives precision
// 1/var_p - 1/var_q and mean (mu_p/var_p - mu_q/var_q) / precision; the
// precision must be positive (var_q > var_p) or NonIntegrableRatio is thrown.
// One-dimensional discrete distributions on a shared support: normalization of
// p/q. If q vanishes somewhere inside the support of p, the result is the limit
// of p / (q + delta) as delta -> 0: p restricted to {q = 0}, renormalized.
Distribution lr_optimal_model(const Distribution& p, const Distribution& q);

struct WrongModelReport {
  Distribution lr_model;
  std::size_t n = 0;
  double auc_true = 0.5;      // score log p
  double auc_lr_model = 0.5;  // score log p_theta
  RocResult roc_true;
  RocResult roc_lr_model;
};

// Draws n in-samples from p and n out-samples from q (independent splits of
// rng) and scores both with log p and with log p_theta. When p and q are the
// same distribution, p_theta is p.
WrongModelReport wrong_model_report(const Distribution& p, const Distribution& q, std::size_t n,
                                    Rng& rng);

// ---------------------------------------------------------------------------
// Mass transfer from a large uniform support to a small disjoint one.

struct EpsilonTransferSpec {
  std::int64_t supp_p = 1;
  std::int64_t supp_q = 1;
  double epsilon = 0.5;
};

struct EpsilonTransferReport {
  double oracle_ll = 0.0;    // log(1 / supp_p)
  double model_ll_in = 0.0;  // log((1 - eps) / supp_p)
  double model_prob_per_p_element = 0.0;
  double model_prob_per_q_element = 0.0;
  // Every supp(Q) element outranks every supp(P) element under the model.
  bool ood_scores_higher = false;
  double total_mass = 1.0;
};

EpsilonTransferReport epsilon_transfer(const EpsilonTransferSpec& spec);

// supp_q / (supp_p + supp_q): the transfer makes OOD points outrank in-points
// exactly when epsilon exceeds this value.
double min_epsilon(std::int64_t supp_p, std::int64_t supp_q);

// ---------------------------------------------------------------------------
// Typical sets of i.i.d. Bernoulli sequences.

struct TypicalSetSpec {
  std::size_t d = 1;  // sequence length
  double success_prob = 0.5;
  double epsilon = 0.0;  // nats per symbol
};

void validate(const TypicalSetSpec& spec);

// |(empirical per-symbol NLL) - H| for a sequence with `ones` successes.
// Written as |ones/d - p| |log(p / (1 - p))| so that compositions matching p
// exactly give exactly zero.
double typical_deviation(std::size_t ones, const TypicalSetSpec& spec);
bool typical_membership(std::span<const std::int64_t> x, const TypicalSetSpec& spec);

// Exact probability of the typical set (binomial sum over member counts).
double typical_mass(const TypicalSetSpec& spec);

// Fraction of n sampled sequences that are typical.
double typical_mass_monte_carlo(const TypicalSetSpec& spec, std::size_t n, Rng& rng);

struct SwapSetReport {
  double prob_z100 = 0.0;  // all ones
  double prob_z75 = 0.0;   // first 3d/4 ones, then zeros
  double prob_ratio = 1.0;
  double log_prob_ratio = 0.0;
  double mass_a = 0.0;
  double mass_a_prime = 0.0;  // z75 swapped out, z100 swapped in
  double mass_gain = 0.0;     // prob_z100 - prob_z75
  bool z100_in_typical_set = false;
  bool z75_in_typical_set = false;
  // Exact rational evaluation (d <= 2048): mass(A') - mass(A) equals
  // P(z100) - P(z75) and is positive. Empty when not evaluated.
  std::optional<bool> exact_gain_matches;
  std::optional<bool> exact_gain_positive;
  std::string mass_gain_exact;  // "num/den", empty when not evaluated
};

// Requires d divisible by 4.
SwapSetReport swap_set_comparison(const TypicalSetSpec& spec);

// JSON forms of the reports above.
nlohmann::json to_json(const WrongModelReport& r);
nlohmann::json to_json(const EpsilonTransferReport& r);
nlohmann::json to_json(const SwapSetReport& r);

}  // namespace oodlab

#endif  // OODLAB_SCENARIOS_H_
