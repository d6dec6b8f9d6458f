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

#include "oodlab/alternatives.h"

#include <string>

namespace oodlab {
namespace {

void require_2d(std::span<const double> x) {
  if (x.size() != 2) throw DimensionMismatch("planar map requires a 2-D point");
}

}  // namespace

RealPoint quadrant_fold(std::span<const double> x) {
  require_2d(x);
  if (x[0] * x[1] < 0.0) return {x[0], -x[1]};
  return {x[0], x[1]};
}

RealPoint radial_collapse(std::span<const double> x) {
  require_2d(x);
  const double magnitude = std::sqrt(0.5 * (x[0] * x[0] + x[1] * x[1]));
  const double z = x[0] < 0.0 ? -magnitude : magnitude;
  return {z, z};
}

std::int64_t level_key(double probability) {
  return std::llround(probability * 1e12);
}

std::vector<std::int64_t> level_set_members(std::span<const double> probs, double level_value) {
  const std::int64_t key = level_key(level_value);
  std::vector<std::int64_t> members;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (level_key(probs[i]) == key) members.push_back(static_cast<std::int64_t>(i));
  }
  return members;
}

namespace detail {

void validate_collapse(std::span<const double> base, double target,
                       std::span<const std::int64_t> subset, double lambda,
                       std::vector<std::int64_t>& level, std::vector<bool>& in_subset) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw InvalidArgument("lambda must lie in (0, 1)");
  if (!(target > 0.0)) throw InvalidArgument("target level value must be positive");
  level = level_set_members(base, target);
  if (level.size() < 2) {
    throw InvalidArgument("level set at " + std::to_string(target) +
                          " has fewer than two members");
  }
  in_subset.assign(base.size(), false);
  for (std::int64_t i : subset) {
    if (i < 0 || static_cast<std::size_t>(i) >= base.size()) {
      throw InvalidArgument("subset index " + std::to_string(i) + " out of range");
    }
    const auto k = static_cast<std::size_t>(i);
    if (std::abs(base[k] - target) > kLevelTolerance || level_key(base[k]) != level_key(target)) {
      throw InvalidArgument("subset index " + std::to_string(i) + " is not on the target level");
    }
    if (in_subset[k]) throw InvalidArgument("subset contains duplicate indices");
    in_subset[k] = true;
  }
  if (subset.empty()) throw InvalidArgument("subset must be non-empty");
  if (subset.size() >= level.size()) {
    throw InvalidArgument("subset must be a strict subset of the level set");
  }
}

}  // namespace detail

Distribution level_set_collapse(const LevelSetCollapseSpec& spec) {
  const std::vector<double> base = spec.base.probabilities();
  std::vector<double> q =
      collapse_level_set<double>(base, spec.target_level_value, spec.subset_a, spec.lambda);
  return Distribution::finite_discrete(std::move(q));
}

std::map<std::int64_t, double> level_masses(std::span<const double> base_probs,
                                            std::span<const double> weights) {
  if (base_probs.size() != weights.size()) {
    throw InvalidArgument("level_masses needs equal-length inputs");
  }
  std::map<std::int64_t, double> masses;
  for (std::size_t i = 0; i < base_probs.size(); ++i) {
    masses[level_key(base_probs[i])] += weights[i];
  }
  return masses;
}

nlohmann::json to_json(const LevelSetCollapseSpec& spec) {
  return {{"base", to_json(spec.base)},
          {"target_level_value", spec.target_level_value},
          {"subset_A", spec.subset_a},
          {"lambda", spec.lambda}};
}

LevelSetCollapseSpec level_set_spec_from_json(const nlohmann::json& j) {
  try {
    return LevelSetCollapseSpec{distribution_from_json(j.at("base")),
                                j.at("target_level_value").get<double>(),
                                j.at("subset_A").get<std::vector<std::int64_t>>(),
                                j.at("lambda").get<double>()};
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed level-set spec: ") + e.what());
  }
}

}  // namespace oodlab
