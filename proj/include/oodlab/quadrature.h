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

#ifndef OODLAB_QUADRATURE_H_
#define OODLAB_QUADRATURE_H_

#include <array>
#include <cstddef>
#include <vector>

#include "oodlab/distributions.h"
#include "oodlab/errors.h"

namespace oodlab {

// Uniform trapezoid grid on [lo, hi] with `points` nodes (points >= 2).
struct GridAxis {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t points = 0;

  double step() const { return (hi - lo) / static_cast<double>(points - 1); }
  double node(std::size_t i) const { return lo + step() * static_cast<double>(i); }
};

inline constexpr std::size_t kDefaultQuadraturePoints1d = std::size_t{1} << 14;
inline constexpr std::size_t kDefaultQuadraturePoints2d = std::size_t{1} << 11;
inline constexpr double kQuadratureHalfWidthSd = 10.0;

// Axis covering +/-10 standard deviations of every Gaussian (mixture
// components included) in `dists` along coordinate `coord`.
GridAxis covering_axis(std::span<const Distribution> dists, std::size_t coord,
                       std::size_t points);

template <class F>
double trapezoid_1d(const GridAxis& axis, F&& f) {
  const double h = axis.step();
  double total = 0.0;
  for (std::size_t i = 0; i < axis.points; ++i) {
    const double w = (i == 0 || i + 1 == axis.points) ? 0.5 : 1.0;
    total += w * f(axis.node(i));
  }
  return total * h;
}

template <class F>
double trapezoid_2d(const GridAxis& ax, const GridAxis& ay, F&& f) {
  const double hx = ax.step();
  const double hy = ay.step();
  double total = 0.0;
  for (std::size_t i = 0; i < ax.points; ++i) {
    const double wx = (i == 0 || i + 1 == ax.points) ? 0.5 : 1.0;
    const double x = ax.node(i);
    double row = 0.0;
    for (std::size_t j = 0; j < ay.points; ++j) {
      const double wy = (j == 0 || j + 1 == ay.points) ? 0.5 : 1.0;
      row += wy * f(x, ay.node(j));
    }
    total += wx * row;
  }
  return total * hx * hy;
}

// Integral of `density` (a callable on a RealPoint span) over the default grid
// of a 1-D or 2-D continuous distribution family. Throws InvalidArgument for
// other dimensions.
template <class F>
double integrate_over(std::span<const Distribution> dists, F&& density,
                      std::size_t points_per_dim = 0) {
  const std::size_t dim = dists.front().sample_space().dim;
  if (dim == 1) {
    const GridAxis ax = covering_axis(
        dists, 0, points_per_dim ? points_per_dim : kDefaultQuadraturePoints1d);
    return trapezoid_1d(ax, [&](double x) {
      const std::array<double, 1> pt = {x};
      return density(std::span<const double>(pt));
    });
  }
  if (dim == 2) {
    const std::size_t n = points_per_dim ? points_per_dim : kDefaultQuadraturePoints2d;
    const GridAxis ax = covering_axis(dists, 0, n);
    const GridAxis ay = covering_axis(dists, 1, n);
    return trapezoid_2d(ax, ay, [&](double x, double y) {
      const std::array<double, 2> pt = {x, y};
      return density(std::span<const double>(pt));
    });
  }
  throw InvalidArgument("quadrature supports only 1-D and 2-D sample spaces");
}

// Integral of exp(log_prob) over the default grid.
double total_mass_by_quadrature(const Distribution& dist, std::size_t points_per_dim = 0);

}  // namespace oodlab

#endif  // OODLAB_QUADRATURE_H_
