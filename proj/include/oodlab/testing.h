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

// Single-sample hypothesis testing: rejection rules, power/size curves, AUC,
// the equal-prior Bayes error floor and the two-sample KS distance.

#ifndef OODLAB_TESTING_H_
#define OODLAB_TESTING_H_

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "oodlab/distributions.h"
#include "oodlab/errors.h"

namespace oodlab {

struct OneSidedBelow {
  double k;  // reject when s < k
};
struct OneSidedAbove {
  double k;  // reject when s > k
};
struct OutsideInterval {
  double lo;  // reject when s is outside [lo, hi]
  double hi;
};

class RejectionRule {
 public:
  using Form = std::variant<OneSidedBelow, OneSidedAbove, OutsideInterval>;

  static RejectionRule below(double k) { return RejectionRule(OneSidedBelow{k}); }
  static RejectionRule above(double k) { return RejectionRule(OneSidedAbove{k}); }
  // Throws InvalidArgument when lo > hi.
  static RejectionRule outside(double lo, double hi);

  const Form& form() const { return form_; }
  bool rejects(double score) const;

 private:
  explicit RejectionRule(Form f) : form_(f) {}
  Form form_;
};

// Score transform of a recast rule.
struct ScoreTransform {
  enum class Kind {
    kIdentity,        // s
    kNegate,          // -s
    kNegAbsDistance,  // -|s - center|
  };
  Kind kind = Kind::kIdentity;
  double center = 0.0;

  double apply(double s) const;
  std::string describe() const;
};

// A rule in the canonical form "reject when transform(s) < threshold".
struct CanonicalRule {
  ScoreTransform transform;
  double threshold = 0.0;

  bool rejects(double s) const { return transform.apply(s) < threshold; }
};

// Rewrites any interval-type rejection rule into canonical form.
CanonicalRule recast_rule(const RejectionRule& rule);

// Power-vs-size curve. Rejection happens at the low end of the oriented score
// ("less in-distribution"), sweeping every merged distinct score value. The
// curve starts at (0, 0), ends at (1, 1), and is stored at those breakpoints
// only; runs of equal size are vertical segments.
struct RocResult {
  std::vector<double> sizes;
  std::vector<double> powers;
  // Pr(in-score > out-score) + 1/2 Pr(tie), under the given orientation.
  double auc = 0.5;
};

// Exact rank-statistic AUC and curve. Throws InvalidArgument on empty input.
RocResult roc_and_auc(std::span<const double> in_scores, std::span<const double> out_scores,
                      bool larger_is_in);

// Same with nonnegative per-score weights (counts or probabilities). Each side
// must have positive total weight.
RocResult weighted_roc_and_auc(std::span<const double> in_scores,
                               std::span<const double> in_weights,
                               std::span<const double> out_scores,
                               std::span<const double> out_weights, bool larger_is_in);

// Trapezoidal area under the stored curve.
double trapezoid_area(const RocResult& roc);

// Linear interpolation of the curve at size = alpha. Where the curve has a
// vertical segment at alpha the lowest power is returned.
double power_at_size(const RocResult& roc, double alpha);

// Highest equal-prior accuracy 1/2 (1 - size) + 1/2 power over all one-sided
// threshold rules in either direction, read off the curve.
double best_threshold_accuracy(const RocResult& roc);

// Equal-prior Bayes error 1/2 * integral of min(p, q): exact summation for
// discrete spaces, trapezoid quadrature for 1-D/2-D continuous ones.
double bayes_error(const Distribution& p, const Distribution& q,
                   std::size_t points_per_dim = 0);

// sup |F_a - G_b| between the empirical CDFs.
double ks_distance(std::span<const double> a, std::span<const double> b);

// Asymptotic two-sample critical value c(alpha) sqrt((n + m) / (n m)),
// c(alpha) = sqrt(-ln(alpha / 2) / 2).
double ks_critical_value(double alpha, std::size_t n, std::size_t m);

// Rejection rate pair for one rejection region.
template <class Weight>
struct RatePair {
  Weight size;
  Weight power;
};

// Enumerates every rejection region that is a union of score values (this
// includes all one-sided and interval rules) for a discrete problem where
// outcome i has score scores[i], null mass p[i] and alternative mass q[i].
// Weight may be an exact rational type. Throws InvalidArgument when there are
// more than 20 distinct scores.
template <class Weight>
std::vector<RatePair<Weight>> rates_for_all_rejection_regions(std::span<const double> scores,
                                                              std::span<const Weight> p,
                                                              std::span<const Weight> q) {
  if (scores.size() != p.size() || scores.size() != q.size()) {
    throw InvalidArgument("scores and masses must have equal lengths");
  }
  std::map<double, std::pair<Weight, Weight>> grouped;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    auto [it, inserted] = grouped.try_emplace(scores[i], Weight(0), Weight(0));
    it->second.first += p[i];
    it->second.second += q[i];
  }
  if (grouped.size() > 20) throw InvalidArgument("too many distinct scores to enumerate");
  std::vector<std::pair<Weight, Weight>> levels;
  for (auto& [score, masses] : grouped) levels.push_back(masses);
  std::vector<RatePair<Weight>> out;
  const std::size_t regions = std::size_t{1} << levels.size();
  out.reserve(regions);
  for (std::size_t mask = 0; mask < regions; ++mask) {
    RatePair<Weight> r{Weight(0), Weight(0)};
    for (std::size_t g = 0; g < levels.size(); ++g) {
      if (mask & (std::size_t{1} << g)) {
        r.size += levels[g].first;
        r.power += levels[g].second;
      }
    }
    out.push_back(r);
  }
  return out;
}

// CSV with header "size,power", 6 significant digits.
std::string roc_to_csv(const RocResult& roc);
nlohmann::json roc_to_json(const RocResult& roc);
RocResult roc_from_json(const nlohmann::json& j);

}  // namespace oodlab

#endif  // OODLAB_TESTING_H_
