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

#ifndef OODLAB_DISTRIBUTIONS_H_
#define OODLAB_DISTRIBUTIONS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "oodlab/rng.h"

namespace oodlab {

// All log quantities in this library are natural logarithms (nats).

using RealPoint = std::vector<double>;
using IndexPoint = std::vector<std::int64_t>;

// One observation. Continuous spaces use RealPoint; discrete spaces use
// IndexPoint with every coordinate in 0..cardinality-1.
using Sample = std::variant<RealPoint, IndexPoint>;

struct SampleSpace {
  enum class Kind { kReal, kIndex };
  Kind kind = Kind::kReal;
  std::size_t dim = 0;
  // Values per coordinate for index spaces; 0 for real spaces.
  std::int64_t cardinality = 0;

  bool operator==(const SampleSpace&) const = default;
};

struct DiagonalGaussian {
  std::vector<double> mean;
  std::vector<double> variance;
};

// d independent Bernoulli coordinates sharing one success probability.
struct ProductBernoulli {
  std::size_t d = 0;
  double success_prob = 0.5;
};

struct FiniteDiscrete {
  std::vector<double> probs;
  std::vector<double> cumulative;  // running sums of probs, for sampling
};

struct UniformDiscrete {
  std::int64_t support_size = 0;
};

class Distribution;

struct Mixture {
  std::vector<Distribution> components;
  std::vector<double> weights;
};

// Immutable analytic distribution. Construct through the named factories,
// which validate every parameter invariant and throw InvalidArgument.
class Distribution {
 public:
  using Variant = std::variant<DiagonalGaussian, ProductBernoulli, FiniteDiscrete,
                               UniformDiscrete, Mixture>;

  static Distribution diagonal_gaussian(std::vector<double> mean,
                                        std::vector<double> variance);
  static Distribution standard_normal(std::size_t dim);
  static Distribution normal(double mean, double variance);
  static Distribution product_bernoulli(std::size_t d, double success_prob);
  // probs must be nonnegative and sum to 1 within 1e-12.
  static Distribution finite_discrete(std::vector<double> probs);
  static Distribution uniform_discrete(std::int64_t support_size);
  static Distribution mixture(std::vector<Distribution> components,
                              std::vector<double> weights);

  const Variant& variant() const { return variant_; }
  SampleSpace sample_space() const;
  bool is_continuous() const {
    return sample_space().kind == SampleSpace::Kind::kReal;
  }
  // Tag used in JSON descriptions.
  std::string_view kind_name() const;

  // Number of outcomes of a one-dimensional discrete distribution
  // (FiniteDiscrete, UniformDiscrete, or a mixture of them).
  std::int64_t support_size() const;
  // Probability vector of a one-dimensional discrete distribution.
  std::vector<double> probabilities() const;

 private:
  explicit Distribution(Variant v) : variant_(std::move(v)) {}

  Variant variant_;
};

// Exact log density (continuous, w.r.t. Lebesgue measure) or log probability
// (discrete). Returns -inf for zero-probability outcomes. Throws
// DimensionMismatch for samples outside the sample space.
double log_prob(const Distribution& dist, const Sample& x);
double log_prob(const Distribution& dist, std::span<const double> x);
double log_prob(const Distribution& dist, std::span<const std::int64_t> x);

// Vectorized log_prob over a batch.
std::vector<double> log_prob(const Distribution& dist, std::span<const Sample> xs);

// n i.i.d. draws; the stream is a pure function of the generator state.
std::vector<Sample> sample(const Distribution& dist, Rng& rng, std::size_t n);
Sample sample_one(const Distribution& dist, Rng& rng);

// Closed-form entropy in nats. Throws UnsupportedAnalyticEntropy for mixtures.
double entropy(const Distribution& dist);

// Standard normal CDF.
double normal_cdf(double z);

// Numerically stable log(sum(exp(values))).
double log_sum_exp(std::span<const double> values);

// JSON description: {"type": <kind_name>, ...parameters}.
nlohmann::json to_json(const Distribution& dist);
Distribution distribution_from_json(const nlohmann::json& j);

}  // namespace oodlab

#endif  // OODLAB_DISTRIBUTIONS_H_
