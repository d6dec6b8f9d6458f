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

#include "oodlab/distributions.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "oodlab/errors.h"

namespace oodlab {
namespace {

constexpr double kSimplexTolerance = 1e-12;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_simplex(std::span<const double> w, const char* what) {
  if (w.empty()) throw InvalidArgument(std::string(what) + " must be non-empty");
  double total = 0.0;
  for (double v : w) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InvalidArgument(std::string(what) + " must be finite and nonnegative");
    }
    total += v;
  }
  if (std::abs(total - 1.0) > kSimplexTolerance) {
    throw InvalidArgument(std::string(what) + " must sum to 1 (got " +
                          std::to_string(total) + ")");
  }
}

void check_index(std::int64_t i, std::int64_t cardinality) {
  if (i < 0 || i >= cardinality) {
    throw DimensionMismatch("index " + std::to_string(i) + " outside support of size " +
                            std::to_string(cardinality));
  }
}

std::size_t draw_from_cumulative(std::span<const double> cumulative, Rng& rng) {
  const double u = rng.uniform() * cumulative.back();
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  auto idx = static_cast<std::size_t>(it - cumulative.begin());
  idx = std::min(idx, cumulative.size() - 1);
  return idx;
}

}  // namespace

Distribution Distribution::diagonal_gaussian(std::vector<double> mean,
                                             std::vector<double> variance) {
  if (mean.empty()) throw InvalidArgument("gaussian dimension must be positive");
  if (mean.size() != variance.size()) {
    throw InvalidArgument("gaussian mean and variance lengths differ");
  }
  for (double m : mean) {
    if (!std::isfinite(m)) throw InvalidArgument("gaussian mean must be finite");
  }
  for (double v : variance) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidArgument("gaussian variance entries must be strictly positive");
    }
  }
  return Distribution(DiagonalGaussian{std::move(mean), std::move(variance)});
}

Distribution Distribution::standard_normal(std::size_t dim) {
  return diagonal_gaussian(std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0));
}

Distribution Distribution::normal(double mean, double variance) {
  return diagonal_gaussian({mean}, {variance});
}

Distribution Distribution::product_bernoulli(std::size_t d, double success_prob) {
  if (d == 0) throw InvalidArgument("bernoulli length must be positive");
  if (!(success_prob > 0.0 && success_prob < 1.0)) {
    throw InvalidArgument("bernoulli success probability must lie in (0, 1)");
  }
  return Distribution(ProductBernoulli{d, success_prob});
}

Distribution Distribution::finite_discrete(std::vector<double> probs) {
  check_simplex(probs, "discrete probabilities");
  std::vector<double> cumulative(probs.size());
  std::partial_sum(probs.begin(), probs.end(), cumulative.begin());
  return Distribution(FiniteDiscrete{std::move(probs), std::move(cumulative)});
}

Distribution Distribution::uniform_discrete(std::int64_t support_size) {
  if (support_size < 1) throw InvalidArgument("uniform support size must be positive");
  return Distribution(UniformDiscrete{support_size});
}

Distribution Distribution::mixture(std::vector<Distribution> components,
                                   std::vector<double> weights) {
  if (components.empty()) throw InvalidArgument("mixture needs at least one component");
  if (components.size() != weights.size()) {
    throw InvalidArgument("mixture weights and components differ in length");
  }
  check_simplex(weights, "mixture weights");
  const SampleSpace space = components.front().sample_space();
  for (const auto& c : components) {
    if (!(c.sample_space() == space)) {
      throw InvalidArgument("mixture components must share one sample space");
    }
  }
  return Distribution(Mixture{std::move(components), std::move(weights)});
}

SampleSpace Distribution::sample_space() const {
  return std::visit(
      Overloaded{
          [](const DiagonalGaussian& g) {
            return SampleSpace{SampleSpace::Kind::kReal, g.mean.size(), 0};
          },
          [](const ProductBernoulli& b) {
            return SampleSpace{SampleSpace::Kind::kIndex, b.d, 2};
          },
          [](const FiniteDiscrete& f) {
            return SampleSpace{SampleSpace::Kind::kIndex, 1,
                               static_cast<std::int64_t>(f.probs.size())};
          },
          [](const UniformDiscrete& u) {
            return SampleSpace{SampleSpace::Kind::kIndex, 1, u.support_size};
          },
          [](const Mixture& m) { return m.components.front().sample_space(); },
      },
      variant_);
}

std::string_view Distribution::kind_name() const {
  return std::visit(Overloaded{
                        [](const DiagonalGaussian&) { return "diagonal_gaussian"; },
                        [](const ProductBernoulli&) { return "product_bernoulli"; },
                        [](const FiniteDiscrete&) { return "finite_discrete"; },
                        [](const UniformDiscrete&) { return "uniform_discrete"; },
                        [](const Mixture&) { return "mixture"; },
                    },
                    variant_);
}

std::int64_t Distribution::support_size() const {
  const SampleSpace space = sample_space();
  if (space.kind != SampleSpace::Kind::kIndex || space.dim != 1) {
    throw InvalidArgument("support_size requires a one-dimensional discrete distribution");
  }
  return space.cardinality;
}

std::vector<double> Distribution::probabilities() const {
  const std::int64_t k = support_size();
  if (const auto* f = std::get_if<FiniteDiscrete>(&variant_)) return f->probs;
  std::vector<double> out(static_cast<std::size_t>(k));
  for (std::int64_t i = 0; i < k; ++i) {
    const std::int64_t idx[1] = {i};
    out[static_cast<std::size_t>(i)] =
        std::exp(log_prob(*this, std::span<const std::int64_t>(idx)));
  }
  return out;
}

double log_prob(const Distribution& dist, std::span<const double> x) {
  return std::visit(
      Overloaded{
          [&](const DiagonalGaussian& g) {
            if (x.size() != g.mean.size()) {
              throw DimensionMismatch("sample dimension " + std::to_string(x.size()) +
                                      " != gaussian dimension " +
                                      std::to_string(g.mean.size()));
            }
            double lp = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
              const double diff = x[i] - g.mean[i];
              lp -= 0.5 * (std::log(2.0 * std::numbers::pi * g.variance[i]) +
                           diff * diff / g.variance[i]);
            }
            return lp;
          },
          [&](const Mixture& m) {
            std::vector<double> terms(m.components.size());
            for (std::size_t k = 0; k < terms.size(); ++k) {
              terms[k] = std::log(m.weights[k]) + log_prob(m.components[k], x);
            }
            return log_sum_exp(terms);
          },
          [](const auto&) -> double {
            throw DimensionMismatch("real-valued sample given to a discrete distribution");
          },
      },
      dist.variant());
}

double log_prob(const Distribution& dist, std::span<const std::int64_t> x) {
  return std::visit(
      Overloaded{
          [&](const ProductBernoulli& b) {
            if (x.size() != b.d) {
              throw DimensionMismatch("sample length " + std::to_string(x.size()) +
                                      " != bernoulli length " + std::to_string(b.d));
            }
            std::int64_t ones = 0;
            for (std::int64_t v : x) {
              check_index(v, 2);
              ones += v;
            }
            const auto zeros = static_cast<std::int64_t>(b.d) - ones;
            return static_cast<double>(ones) * std::log(b.success_prob) +
                   static_cast<double>(zeros) * std::log1p(-b.success_prob);
          },
          [&](const FiniteDiscrete& f) {
            if (x.size() != 1) throw DimensionMismatch("discrete sample must be a single index");
            check_index(x[0], static_cast<std::int64_t>(f.probs.size()));
            const double p = f.probs[static_cast<std::size_t>(x[0])];
            return p > 0.0 ? std::log(p) : kNegInf;
          },
          [&](const UniformDiscrete& u) {
            if (x.size() != 1) throw DimensionMismatch("discrete sample must be a single index");
            check_index(x[0], u.support_size);
            return -std::log(static_cast<double>(u.support_size));
          },
          [&](const Mixture& m) {
            std::vector<double> terms(m.components.size());
            for (std::size_t k = 0; k < terms.size(); ++k) {
              terms[k] = std::log(m.weights[k]) + log_prob(m.components[k], x);
            }
            return log_sum_exp(terms);
          },
          [](const DiagonalGaussian&) -> double {
            throw DimensionMismatch("index sample given to a continuous distribution");
          },
      },
      dist.variant());
}

double log_prob(const Distribution& dist, const Sample& x) {
  return std::visit([&](const auto& point) { return log_prob(dist, std::span(point)); }, x);
}

std::vector<double> log_prob(const Distribution& dist, std::span<const Sample> xs) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(log_prob(dist, x));
  return out;
}

Sample sample_one(const Distribution& dist, Rng& rng) {
  return std::visit(
      Overloaded{
          [&](const DiagonalGaussian& g) -> Sample {
            RealPoint x(g.mean.size());
            for (std::size_t i = 0; i < x.size(); ++i) {
              x[i] = g.mean[i] + std::sqrt(g.variance[i]) * rng.normal();
            }
            return x;
          },
          [&](const ProductBernoulli& b) -> Sample {
            IndexPoint x(b.d);
            for (auto& v : x) v = rng.uniform() < b.success_prob ? 1 : 0;
            return x;
          },
          [&](const FiniteDiscrete& f) -> Sample {
            return IndexPoint{static_cast<std::int64_t>(draw_from_cumulative(f.cumulative, rng))};
          },
          [&](const UniformDiscrete& u) -> Sample {
            return IndexPoint{static_cast<std::int64_t>(
                rng.uniform_index(static_cast<std::uint64_t>(u.support_size)))};
          },
          [&](const Mixture& m) -> Sample {
            std::vector<double> cumulative(m.weights.size());
            std::partial_sum(m.weights.begin(), m.weights.end(), cumulative.begin());
            return sample_one(m.components[draw_from_cumulative(cumulative, rng)], rng);
          },
      },
      dist.variant());
}

std::vector<Sample> sample(const Distribution& dist, Rng& rng, std::size_t n) {
  std::vector<Sample> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sample_one(dist, rng));
  return out;
}

double entropy(const Distribution& dist) {
  return std::visit(
      Overloaded{
          [](const DiagonalGaussian& g) {
            double h = 0.0;
            for (double v : g.variance) {
              h += 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e * v);
            }
            return h;
          },
          [](const ProductBernoulli& b) {
            const double p = b.success_prob;
            return -static_cast<double>(b.d) * (p * std::log(p) + (1.0 - p) * std::log1p(-p));
          },
          [](const FiniteDiscrete& f) {
            double h = 0.0;
            for (double p : f.probs) {
              if (p > 0.0) h -= p * std::log(p);
            }
            return h;
          },
          [](const UniformDiscrete& u) {
            return std::log(static_cast<double>(u.support_size));
          },
          [](const Mixture&) -> double {
            throw UnsupportedAnalyticEntropy("mixtures have no closed-form entropy");
          },
      },
      dist.variant());
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double log_sum_exp(std::span<const double> values) {
  if (values.empty()) return kNegInf;
  const double hi = *std::max_element(values.begin(), values.end());
  if (!std::isfinite(hi)) return hi;
  double total = 0.0;
  for (double v : values) total += std::exp(v - hi);
  return hi + std::log(total);
}

nlohmann::json to_json(const Distribution& dist) {
  nlohmann::json j;
  j["type"] = std::string(dist.kind_name());
  std::visit(Overloaded{
                 [&](const DiagonalGaussian& g) {
                   j["mean"] = g.mean;
                   j["variance"] = g.variance;
                 },
                 [&](const ProductBernoulli& b) {
                   j["d"] = b.d;
                   j["success_prob"] = b.success_prob;
                 },
                 [&](const FiniteDiscrete& f) { j["probs"] = f.probs; },
                 [&](const UniformDiscrete& u) { j["support_size"] = u.support_size; },
                 [&](const Mixture& m) {
                   j["components"] = nlohmann::json::array();
                   for (const auto& c : m.components) j["components"].push_back(to_json(c));
                   j["weights"] = m.weights;
                 },
             },
             dist.variant());
  return j;
}

Distribution distribution_from_json(const nlohmann::json& j) {
  try {
    const std::string type = j.at("type").get<std::string>();
    if (type == "diagonal_gaussian") {
      return Distribution::diagonal_gaussian(j.at("mean").get<std::vector<double>>(),
                                             j.at("variance").get<std::vector<double>>());
    }
    if (type == "product_bernoulli") {
      return Distribution::product_bernoulli(j.at("d").get<std::size_t>(),
                                             j.at("success_prob").get<double>());
    }
    if (type == "finite_discrete") {
      return Distribution::finite_discrete(j.at("probs").get<std::vector<double>>());
    }
    if (type == "uniform_discrete") {
      return Distribution::uniform_discrete(j.at("support_size").get<std::int64_t>());
    }
    if (type == "mixture") {
      std::vector<Distribution> components;
      for (const auto& c : j.at("components")) components.push_back(distribution_from_json(c));
      return Distribution::mixture(std::move(components),
                                   j.at("weights").get<std::vector<double>>());
    }
    throw InvalidArgument("unknown distribution type '" + type + "'");
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed distribution description: ") + e.what());
  }
}

}  // namespace oodlab
