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

#include "oodlab/quadrature.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "oodlab/errors.h"

namespace oodlab {
namespace {

void extend_range(const Distribution& dist, std::size_t coord, double& lo, double& hi) {
  if (const auto* g = std::get_if<DiagonalGaussian>(&dist.variant())) {
    const double sd = std::sqrt(g->variance.at(coord));
    lo = std::min(lo, g->mean[coord] - kQuadratureHalfWidthSd * sd);
    hi = std::max(hi, g->mean[coord] + kQuadratureHalfWidthSd * sd);
    return;
  }
  if (const auto* m = std::get_if<Mixture>(&dist.variant())) {
    for (const auto& c : m->components) extend_range(c, coord, lo, hi);
    return;
  }
  throw InvalidArgument("quadrature requires continuous distributions");
}

}  // namespace

GridAxis covering_axis(std::span<const Distribution> dists, std::size_t coord,
                       std::size_t points) {
  if (points < 2) throw InvalidArgument("quadrature needs at least two nodes per axis");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& d : dists) extend_range(d, coord, lo, hi);
  return GridAxis{lo, hi, points};
}

double total_mass_by_quadrature(const Distribution& dist, std::size_t points_per_dim) {
  if (!dist.is_continuous()) {
    throw InvalidArgument("quadrature requires a continuous distribution");
  }
  return integrate_over(
      std::span<const Distribution>(&dist, 1),
      [&](std::span<const double> x) { return std::exp(log_prob(dist, x)); },
      points_per_dim);
}

}  // namespace oodlab
