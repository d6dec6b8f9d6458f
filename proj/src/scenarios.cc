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

#include "oodlab/scenarios.h"

#include <cmath>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "oodlab/errors.h"

namespace oodlab {
namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

constexpr std::size_t kMaxExactLength = 2048;

double log_choose(std::size_t n, std::size_t k) {
  const auto nd = static_cast<double>(n), kd = static_cast<double>(k);
  return std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0);
}

double log_binomial_term(std::size_t d, std::size_t k, double p) {
  const auto kd = static_cast<double>(k);
  const auto rest = static_cast<double>(d - k);
  return log_choose(d, k) + kd * std::log(p) + rest * std::log1p(-p);
}

cpp_rational rational_pow(const cpp_rational& base, std::size_t e) {
  cpp_rational result(1), b(base);
  while (e) {
    if (e & 1) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

IndexPoint z100(std::size_t d) { return IndexPoint(d, 1); }

IndexPoint z75(std::size_t d) {
  IndexPoint x(d, 0);
  for (std::size_t i = 0; i < 3 * d / 4; ++i) x[i] = 1;
  return x;
}

}  // namespace

Distribution lr_optimal_model(const Distribution& p, const Distribution& q) {
  const auto* gp = std::get_if<DiagonalGaussian>(&p.variant());
  const auto* gq = std::get_if<DiagonalGaussian>(&q.variant());
  if (gp && gq) {
    if (gp->mean.size() != gq->mean.size()) {
      throw InvalidArgument("lr_optimal_model needs Gaussians of equal dimension");
    }
    std::vector<double> mean(gp->mean.size()), variance(gp->mean.size());
    for (std::size_t i = 0; i < mean.size(); ++i) {
      const double precision = 1.0 / gp->variance[i] - 1.0 / gq->variance[i];
      if (!(precision > 0.0)) {
        throw NonIntegrableRatio(
            "p/q is not integrable: var(q) must exceed var(p) in every coordinate");
      }
      variance[i] = 1.0 / precision;
      mean[i] = (gp->mean[i] / gp->variance[i] - gq->mean[i] / gq->variance[i]) * variance[i];
    }
    return Distribution::diagonal_gaussian(std::move(mean), std::move(variance));
  }
  if (!p.is_continuous() && !q.is_continuous() && p.sample_space().dim == 1 &&
      p.sample_space() == q.sample_space()) {
    const std::vector<double> pp = p.probabilities();
    const std::vector<double> qq = q.probabilities();
    // Outcomes with p > 0 = q have infinite ratio; when any exist they take all
    // the mass, in proportion to p (the limit of p / (q + delta)).
    bool infinite = false;
    for (std::size_t i = 0; i < pp.size(); ++i) {
      if (pp[i] > 0.0 && qq[i] == 0.0) infinite = true;
    }
    std::vector<double> ratio(pp.size(), 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < pp.size(); ++i) {
      if (pp[i] == 0.0) continue;
      if (infinite) {
        if (qq[i] == 0.0) ratio[i] = pp[i];
      } else {
        ratio[i] = pp[i] / qq[i];
      }
      total += ratio[i];
    }
    for (double& r : ratio) r /= total;
    return Distribution::finite_discrete(std::move(ratio));
  }
  throw InvalidArgument(
      "lr_optimal_model supports diagonal Gaussians or 1-D discrete distributions on one support");
}

WrongModelReport wrong_model_report(const Distribution& p, const Distribution& q, std::size_t n,
                                    Rng& rng) {
  if (n == 0) throw InvalidArgument("sample count must be positive");
  // With p = q the ratio is constant and has no normalizable density; every
  // score is equally uninformative, so p itself stands in.
  Distribution lr_model = to_json(p) == to_json(q) ? p : lr_optimal_model(p, q);
  Rng in_rng = rng.split(0);
  Rng out_rng = rng.split(1);
  const std::vector<Sample> xs = sample(p, in_rng, n);
  const std::vector<Sample> ys = sample(q, out_rng, n);

  const std::vector<double> true_in = log_prob(p, xs), true_out = log_prob(p, ys);
  const std::vector<double> lr_in = log_prob(lr_model, xs), lr_out = log_prob(lr_model, ys);
  RocResult roc_true = roc_and_auc(true_in, true_out, true);
  RocResult roc_lr = roc_and_auc(lr_in, lr_out, true);
  const double auc_true = roc_true.auc, auc_lr = roc_lr.auc;
  return WrongModelReport{std::move(lr_model), n,          auc_true,
                          auc_lr,              std::move(roc_true), std::move(roc_lr)};
}

EpsilonTransferReport epsilon_transfer(const EpsilonTransferSpec& spec) {
  if (spec.supp_p < 1 || spec.supp_q < 1) throw InvalidArgument("support sizes must be positive");
  if (!(spec.epsilon > 0.0 && spec.epsilon < 1.0)) {
    throw InvalidArgument("epsilon must lie in (0, 1)");
  }
  const auto sp = static_cast<double>(spec.supp_p);
  const auto sq = static_cast<double>(spec.supp_q);
  EpsilonTransferReport r;
  r.oracle_ll = -std::log(sp);
  r.model_prob_per_p_element = (1.0 - spec.epsilon) / sp;
  r.model_prob_per_q_element = spec.epsilon / sq;
  r.model_ll_in = std::log1p(-spec.epsilon) - std::log(sp);
  r.ood_scores_higher = r.model_prob_per_q_element > r.model_prob_per_p_element;
  const long double mass = static_cast<long double>(r.model_prob_per_p_element) * spec.supp_p +
                     static_cast<long double>(r.model_prob_per_q_element) * spec.supp_q;
  r.total_mass = static_cast<double>(mass);
  return r;
}

double min_epsilon(std::int64_t supp_p, std::int64_t supp_q) {
  if (supp_p < 1 || supp_q < 1) throw InvalidArgument("support sizes must be positive");
  return static_cast<double>(supp_q) / static_cast<double>(supp_p + supp_q);
}

void validate(const TypicalSetSpec& spec) {
  if (spec.d < 1) throw InvalidArgument("sequence length must be positive");
  if (!(spec.success_prob > 0.0 && spec.success_prob < 1.0)) {
    throw InvalidArgument("success probability must lie in (0, 1)");
  }
  if (!(spec.epsilon >= 0.0) || std::isnan(spec.epsilon)) {
    throw InvalidArgument("epsilon must be nonnegative");
  }
}

double typical_deviation(std::size_t ones, const TypicalSetSpec& spec) {
  const double p = spec.success_prob;
  const auto d = static_cast<double>(spec.d);
  const double excess = std::abs(static_cast<double>(ones) - p * d) / d;
  return excess * std::abs(std::log(p) - std::log1p(-p));
}

bool typical_membership(std::span<const std::int64_t> x, const TypicalSetSpec& spec) {
  validate(spec);
  if (x.size() != spec.d) {
    throw DimensionMismatch("sequence length " + std::to_string(x.size()) + " != " +
                            std::to_string(spec.d));
  }
  std::size_t ones = 0;
  for (std::int64_t v : x) {
    if (v != 0 && v != 1) throw InvalidArgument("sequence entries must be 0 or 1");
    ones += static_cast<std::size_t>(v);
  }
  return typical_deviation(ones, spec) <= spec.epsilon;
}

double typical_mass(const TypicalSetSpec& spec) {
  validate(spec);
  double mass = 0.0;
  for (std::size_t k = 0; k <= spec.d; ++k) {
    if (typical_deviation(k, spec) <= spec.epsilon) {
      mass += std::exp(log_binomial_term(spec.d, k, spec.success_prob));
    }
  }
  return std::min(mass, 1.0);
}

double typical_mass_monte_carlo(const TypicalSetSpec& spec, std::size_t n, Rng& rng) {
  validate(spec);
  if (n == 0) throw InvalidArgument("sample count must be positive");
  const Distribution source = Distribution::product_bernoulli(spec.d, spec.success_prob);
  std::size_t members = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Sample x = sample_one(source, rng);
    if (typical_membership(std::get<IndexPoint>(x), spec)) ++members;
  }
  return static_cast<double>(members) / static_cast<double>(n);
}

SwapSetReport swap_set_comparison(const TypicalSetSpec& spec) {
  validate(spec);
  if (spec.d % 4 != 0) throw InvalidArgument("swap-set comparison needs d divisible by 4");
  const Distribution source = Distribution::product_bernoulli(spec.d, spec.success_prob);
  const IndexPoint all_ones = z100(spec.d);
  const IndexPoint three_quarters = z75(spec.d);

  SwapSetReport r;
  const double log_z100 = log_prob(source, std::span<const std::int64_t>(all_ones));
  const double log_z75 = log_prob(source, std::span<const std::int64_t>(three_quarters));
  r.prob_z100 = std::exp(log_z100);
  r.prob_z75 = std::exp(log_z75);
  r.log_prob_ratio = log_z100 - log_z75;
  r.prob_ratio = std::pow(spec.success_prob / (1.0 - spec.success_prob),
                          static_cast<double>(spec.d / 4));
  r.mass_a = typical_mass(spec);
  r.mass_gain = r.prob_z100 - r.prob_z75;
  r.mass_a_prime = r.mass_a + r.mass_gain;
  r.z100_in_typical_set = typical_membership(all_ones, spec);
  r.z75_in_typical_set = typical_membership(three_quarters, spec);

  if (spec.d <= kMaxExactLength) {
    const cpp_rational p(spec.success_prob);
    const cpp_rational q = cpp_rational(1) - p;
    cpp_rational mass_a(0);
    cpp_int choose(1);
    for (std::size_t k = 0; k <= spec.d; ++k) {
      if (k > 0) choose = choose * (spec.d - k + 1) / k;
      if (typical_deviation(k, spec) <= spec.epsilon) {
        mass_a += cpp_rational(choose) * rational_pow(p, k) * rational_pow(q, spec.d - k);
      }
    }
    const cpp_rational exact_z100 = rational_pow(p, spec.d);
    const cpp_rational exact_z75 = rational_pow(p, 3 * spec.d / 4) * rational_pow(q, spec.d / 4);
    const cpp_rational mass_a_prime = mass_a - exact_z75 + exact_z100;
    const cpp_rational gain = exact_z100 - exact_z75;
    r.exact_gain_matches = (mass_a_prime - mass_a) == gain;
    r.exact_gain_positive = gain > 0;
    r.mass_gain_exact = gain.str();
  }
  return r;
}

nlohmann::json to_json(const WrongModelReport& r) {
  return {{"lr_model", to_json(r.lr_model)},
          {"n", r.n},
          {"auc_true", r.auc_true},
          {"auc_lr_model", r.auc_lr_model}};
}

nlohmann::json to_json(const EpsilonTransferReport& r) {
  return {{"oracle_ll", r.oracle_ll},
          {"model_ll_in", r.model_ll_in},
          {"model_prob_per_p_element", r.model_prob_per_p_element},
          {"model_prob_per_q_element", r.model_prob_per_q_element},
          {"ood_scores_higher", r.ood_scores_higher},
          {"total_mass", r.total_mass}};
}

nlohmann::json to_json(const SwapSetReport& r) {
  nlohmann::json j = {{"prob_z100", r.prob_z100},
                      {"prob_z75", r.prob_z75},
                      {"prob_ratio", r.prob_ratio},
                      {"log_prob_ratio", r.log_prob_ratio},
                      {"mass_A", r.mass_a},
                      {"mass_A_prime", r.mass_a_prime},
                      {"mass_gain", r.mass_gain},
                      {"z100_in_typical_set", r.z100_in_typical_set},
                      {"z75_in_typical_set", r.z75_in_typical_set}};
  if (r.exact_gain_matches) {
    j["exact_gain_matches"] = *r.exact_gain_matches;
    j["exact_gain_positive"] = *r.exact_gain_positive;
    j["mass_gain_exact"] = r.mass_gain_exact;
  }
  return j;
}

}  // namespace oodlab
