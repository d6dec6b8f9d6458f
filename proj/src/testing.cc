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

#include "oodlab/testing.h"

#include <cmath>
#include <cstdint>
#include <numeric>

#include "oodlab/csv.h"
#include "oodlab/quadrature.h"

namespace oodlab {
namespace {

struct ScoredWeight {
  double score;
  double weight;
  bool is_in;
};

void require_nonempty(std::span<const double> in, std::span<const double> out) {
  if (in.empty() || out.empty()) throw InvalidArgument("score lists must be non-empty");
}

// Probability of each index-space outcome, enumerated in lexicographic order.
std::vector<double> enumerate_probabilities(const Distribution& dist) {
  const SampleSpace space = dist.sample_space();
  double outcomes = std::pow(static_cast<double>(space.cardinality),
                             static_cast<double>(space.dim));
  if (outcomes > static_cast<double>(std::size_t{1} << 22)) {
    throw InvalidArgument("discrete sample space too large to enumerate");
  }
  std::vector<double> probs;
  probs.reserve(static_cast<std::size_t>(outcomes));
  IndexPoint x(space.dim, 0);
  while (true) {
    probs.push_back(std::exp(log_prob(dist, std::span<const std::int64_t>(x))));
    std::size_t c = space.dim;
    while (c > 0) {
      --c;
      if (++x[c] < space.cardinality) break;
      x[c] = 0;
      if (c == 0) return probs;
    }
  }
}

double bernoulli_bayes_error(const ProductBernoulli& a, const ProductBernoulli& b) {
  const auto d = static_cast<double>(a.d);
  double total = 0.0;
  for (std::size_t k = 0; k <= a.d; ++k) {
    const auto kd = static_cast<double>(k);
    const double log_choose = std::lgamma(d + 1) - std::lgamma(kd + 1) - std::lgamma(d - kd + 1);
    const double la = kd * std::log(a.success_prob) + (d - kd) * std::log1p(-a.success_prob);
    const double lb = kd * std::log(b.success_prob) + (d - kd) * std::log1p(-b.success_prob);
    total += std::exp(log_choose + std::min(la, lb));
  }
  return 0.5 * total;
}

}  // namespace

RejectionRule RejectionRule::outside(double lo, double hi) {
  if (!(lo <= hi)) throw InvalidArgument("interval rule requires lo <= hi");
  return RejectionRule(OutsideInterval{lo, hi});
}

bool RejectionRule::rejects(double s) const {
  if (const auto* r = std::get_if<OneSidedBelow>(&form_)) return s < r->k;
  if (const auto* r = std::get_if<OneSidedAbove>(&form_)) return s > r->k;
  const auto& r = std::get<OutsideInterval>(form_);
  return s < r.lo || s > r.hi;
}

double ScoreTransform::apply(double s) const {
  switch (kind) {
    case Kind::kIdentity:
      return s;
    case Kind::kNegate:
      return -s;
    case Kind::kNegAbsDistance:
      return -std::abs(s - center);
  }
  return s;
}

std::string ScoreTransform::describe() const {
  switch (kind) {
    case Kind::kIdentity:
      return "s";
    case Kind::kNegate:
      return "-s";
    case Kind::kNegAbsDistance:
      return "-|s - " + format_significant(center, 17) + "|";
  }
  return "s";
}

CanonicalRule recast_rule(const RejectionRule& rule) {
  if (const auto* r = std::get_if<OneSidedBelow>(&rule.form())) {
    return {ScoreTransform{ScoreTransform::Kind::kIdentity, 0.0}, r->k};
  }
  if (const auto* r = std::get_if<OneSidedAbove>(&rule.form())) {
    return {ScoreTransform{ScoreTransform::Kind::kNegate, 0.0}, -r->k};
  }
  const auto& r = std::get<OutsideInterval>(rule.form());
  const double center = 0.5 * (r.lo + r.hi);
  const double half_width = 0.5 * (r.hi - r.lo);
  return {ScoreTransform{ScoreTransform::Kind::kNegAbsDistance, center}, -half_width};
}

RocResult roc_and_auc(std::span<const double> in_scores, std::span<const double> out_scores,
                      bool larger_is_in) {
  require_nonempty(in_scores, out_scores);
  const double sign = larger_is_in ? 1.0 : -1.0;
  std::vector<double> in(in_scores.size());
  std::vector<double> out(out_scores.size());
  std::transform(in_scores.begin(), in_scores.end(), in.begin(),
                 [&](double s) { return sign * s; });
  std::transform(out_scores.begin(), out_scores.end(), out.begin(),
                 [&](double s) { return sign * s; });
  std::sort(in.begin(), in.end());
  std::sort(out.begin(), out.end());

  const auto n_in = static_cast<std::uint64_t>(in.size());
  const auto n_out = static_cast<std::uint64_t>(out.size());
  RocResult roc;
  roc.sizes.push_back(0.0);
  roc.powers.push_back(0.0);
  // Twice the Mann-Whitney count: 2 * #(out < in) + #(ties).
  std::uint64_t twice_wins = 0;
  std::size_t i = 0, j = 0;
  while (i < in.size() || j < out.size()) {
    double v;
    if (j == out.size() || (i < in.size() && in[i] <= out[j])) {
      v = in[i];
    } else {
      v = out[j];
    }
    const std::size_t out_before = j;
    std::size_t a = 0, b = 0;
    while (i < in.size() && in[i] == v) ++i, ++a;
    while (j < out.size() && out[j] == v) ++j, ++b;
    twice_wins += a * (2 * static_cast<std::uint64_t>(out_before) + b);
    roc.sizes.push_back(static_cast<double>(i) / static_cast<double>(n_in));
    roc.powers.push_back(static_cast<double>(j) / static_cast<double>(n_out));
  }
  roc.auc = static_cast<double>(twice_wins) / (2.0 * static_cast<double>(n_in) *
                                               static_cast<double>(n_out));
  return roc;
}

RocResult weighted_roc_and_auc(std::span<const double> in_scores,
                               std::span<const double> in_weights,
                               std::span<const double> out_scores,
                               std::span<const double> out_weights, bool larger_is_in) {
  require_nonempty(in_scores, out_scores);
  if (in_scores.size() != in_weights.size() || out_scores.size() != out_weights.size()) {
    throw InvalidArgument("scores and weights must have equal lengths");
  }
  const double sign = larger_is_in ? 1.0 : -1.0;
  std::vector<ScoredWeight> all;
  all.reserve(in_scores.size() + out_scores.size());
  double total_in = 0.0, total_out = 0.0;
  for (std::size_t k = 0; k < in_scores.size(); ++k) {
    if (!(in_weights[k] >= 0.0)) throw InvalidArgument("weights must be nonnegative");
    all.push_back({sign * in_scores[k], in_weights[k], true});
    total_in += in_weights[k];
  }
  for (std::size_t k = 0; k < out_scores.size(); ++k) {
    if (!(out_weights[k] >= 0.0)) throw InvalidArgument("weights must be nonnegative");
    all.push_back({sign * out_scores[k], out_weights[k], false});
    total_out += out_weights[k];
  }
  if (!(total_in > 0.0) || !(total_out > 0.0)) {
    throw InvalidArgument("each side needs positive total weight");
  }
  std::sort(all.begin(), all.end(),
            [](const ScoredWeight& x, const ScoredWeight& y) { return x.score < y.score; });

  RocResult roc;
  roc.sizes.push_back(0.0);
  roc.powers.push_back(0.0);
  double cum_in = 0.0, cum_out = 0.0, area = 0.0;
  std::size_t k = 0;
  while (k < all.size()) {
    const double v = all[k].score;
    double a = 0.0, b = 0.0;
    for (; k < all.size() && all[k].score == v; ++k) {
      (all[k].is_in ? a : b) += all[k].weight;
    }
    area += a * (cum_out + 0.5 * b);
    cum_in += a;
    cum_out += b;
    roc.sizes.push_back(cum_in / total_in);
    roc.powers.push_back(cum_out / total_out);
  }
  roc.sizes.back() = 1.0;
  roc.powers.back() = 1.0;
  roc.auc = area / (total_in * total_out);
  return roc;
}

double trapezoid_area(const RocResult& roc) {
  double area = 0.0;
  for (std::size_t k = 1; k < roc.sizes.size(); ++k) {
    area += (roc.sizes[k] - roc.sizes[k - 1]) * 0.5 * (roc.powers[k] + roc.powers[k - 1]);
  }
  return area;
}

double power_at_size(const RocResult& roc, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must lie in [0, 1]");
  const auto it = std::lower_bound(roc.sizes.begin(), roc.sizes.end(), alpha);
  if (it == roc.sizes.end()) return roc.powers.back();
  const auto k = static_cast<std::size_t>(it - roc.sizes.begin());
  if (roc.sizes[k] == alpha || k == 0) return roc.powers[k];
  const double x0 = roc.sizes[k - 1], x1 = roc.sizes[k];
  const double y0 = roc.powers[k - 1], y1 = roc.powers[k];
  return y0 + (y1 - y0) * (alpha - x0) / (x1 - x0);
}

double best_threshold_accuracy(const RocResult& roc) {
  double best = 0.0;
  for (std::size_t k = 0; k < roc.sizes.size(); ++k) {
    const double forward = 0.5 * (1.0 - roc.sizes[k] + roc.powers[k]);
    best = std::max({best, forward, 1.0 - forward});
  }
  return best;
}

double bayes_error(const Distribution& p, const Distribution& q, std::size_t points_per_dim) {
  if (!(p.sample_space() == q.sample_space())) {
    throw InvalidArgument("bayes_error requires distributions on the same sample space");
  }
  if (p.is_continuous()) {
    const Distribution both[2] = {p, q};
    return 0.5 * integrate_over(
                     std::span<const Distribution>(both),
                     [&](std::span<const double> x) {
                       return std::exp(std::min(log_prob(p, x), log_prob(q, x)));
                     },
                     points_per_dim);
  }
  const auto* bp = std::get_if<ProductBernoulli>(&p.variant());
  const auto* bq = std::get_if<ProductBernoulli>(&q.variant());
  if (bp && bq) return bernoulli_bayes_error(*bp, *bq);
  const std::vector<double> pp = enumerate_probabilities(p);
  const std::vector<double> qq = enumerate_probabilities(q);
  double overlap = 0.0;
  for (std::size_t i = 0; i < pp.size(); ++i) overlap += std::min(pp[i], qq[i]);
  return 0.5 * overlap;
}

double ks_distance(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw InvalidArgument("ks_distance needs non-empty samples");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const auto n = static_cast<double>(x.size());
  const auto m = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double sup = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    sup = std::max(sup, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  return sup;
}

double ks_critical_value(double alpha, std::size_t n, std::size_t m) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
  if (n == 0 || m == 0) throw InvalidArgument("sample sizes must be positive");
  const double c = std::sqrt(-0.5 * std::log(0.5 * alpha));
  const auto nd = static_cast<double>(n), md = static_cast<double>(m);
  return c * std::sqrt((nd + md) / (nd * md));
}

std::string roc_to_csv(const RocResult& roc) {
  CsvTable table({"size", "power"});
  for (std::size_t k = 0; k < roc.sizes.size(); ++k) {
    table.add_numeric_row({roc.sizes[k], roc.powers[k]});
  }
  return table.str();
}

nlohmann::json roc_to_json(const RocResult& roc) {
  return {{"sizes", roc.sizes}, {"powers", roc.powers}, {"auc", roc.auc}};
}

RocResult roc_from_json(const nlohmann::json& j) {
  try {
    RocResult roc;
    roc.sizes = j.at("sizes").get<std::vector<double>>();
    roc.powers = j.at("powers").get<std::vector<double>>();
    roc.auc = j.at("auc").get<double>();
    if (roc.sizes.size() != roc.powers.size()) {
      throw InvalidArgument("roc sizes and powers differ in length");
    }
    return roc;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed roc description: ") + e.what());
  }
}

}  // namespace oodlab
