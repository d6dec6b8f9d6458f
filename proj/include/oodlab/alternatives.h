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

// Out-distributions that a statistic built from p(x) cannot tell apart from P.
//
// Both continuous maps act on the standard bivariate Gaussian and preserve the
// distribution of p(x); the discrete construction reweights part of a level
// set {x : p(x) = v} and keeps the level set's total mass.

#ifndef OODLAB_ALTERNATIVES_H_
#define OODLAB_ALTERNATIVES_H_

#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "json.hpp"
#include "oodlab/distributions.h"
#include "oodlab/errors.h"

namespace oodlab {

// (x1, -x2) when x1 * x2 < 0, else x unchanged: the result lies in the closed
// first/third quadrants.
RealPoint quadrant_fold(std::span<const double> x);

// (z, z) with z = sign(x1) sqrt((x1^2 + x2^2) / 2), sign(0) taken as +.
// Preserves the Euclidean norm.
RealPoint radial_collapse(std::span<const double> x);

struct LevelSetCollapseSpec {
  Distribution base;  // one-dimensional discrete
  double target_level_value = 0.0;
  std::vector<std::int64_t> subset_a;
  double lambda = 0.5;
};

inline constexpr double kLevelTolerance = 1e-12;

// Probabilities are grouped into level sets by rounding to 12 decimals.
std::int64_t level_key(double probability);

// Indices whose probability falls in the same level as `level_value`.
std::vector<std::int64_t> level_set_members(std::span<const double> probs, double level_value);

namespace detail {

void validate_collapse(std::span<const double> base, double target,
                       std::span<const std::int64_t> subset, double lambda,
                       std::vector<std::int64_t>& level, std::vector<bool>& in_subset);

}  // namespace detail

// Q with q(x) = P(level of x) q(x | level): inside the target level set the
// members of subset_a are down-weighted by lambda and the level is
// renormalized; every other outcome keeps its probability. Real may be an
// exact rational type constructible from double, in which case the level mass
// is preserved exactly.
template <class Real>
std::vector<Real> collapse_level_set(std::span<const double> base, double target,
                                     std::span<const std::int64_t> subset, double lambda) {
  std::vector<std::int64_t> level;
  std::vector<bool> in_subset;
  detail::validate_collapse(base, target, subset, lambda, level, in_subset);

  std::vector<Real> q;
  q.reserve(base.size());
  for (double p : base) q.emplace_back(p);
  const Real lam(lambda);
  Real level_mass(0), reweighted_mass(0);
  for (std::int64_t i : level) {
    const Real p_i(base[static_cast<std::size_t>(i)]);
    level_mass += p_i;
    reweighted_mass += in_subset[static_cast<std::size_t>(i)] ? Real(lam * p_i) : p_i;
  }
  // C = lambda P(A | level) + P(level \ A | level)
  const Real normalizer = reweighted_mass / level_mass;
  for (std::int64_t i : level) {
    const auto k = static_cast<std::size_t>(i);
    const Real p_i(base[k]);
    q[k] = in_subset[k] ? Real(lam * p_i / normalizer) : Real(p_i / normalizer);
  }
  return q;
}

// Validates the spec and returns Q as a FiniteDiscrete distribution.
// Throws InvalidArgument when the level set has fewer than two members,
// subset_a is empty or covers the whole level set, a subset member is off the
// level, or lambda is outside (0, 1).
Distribution level_set_collapse(const LevelSetCollapseSpec& spec);

// Mass of each p-level (keyed by level_key) under `weights`. Equal maps for
// weights P and Q mean p(x) has the same distribution under both.
std::map<std::int64_t, double> level_masses(std::span<const double> base_probs,
                                            std::span<const double> weights);

nlohmann::json to_json(const LevelSetCollapseSpec& spec);
LevelSetCollapseSpec level_set_spec_from_json(const nlohmann::json& j);

}  // namespace oodlab

#endif  // OODLAB_ALTERNATIVES_H_
