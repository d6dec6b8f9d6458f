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

#include "oodlab/report.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <ostream>

#include <boost/multiprecision/cpp_int.hpp>

#include "oodlab/alternatives.h"
#include "oodlab/csv.h"
#include "oodlab/distributions.h"
#include "oodlab/rng.h"
#include "oodlab/scenarios.h"
#include "oodlab/statistics.h"
#include "oodlab/svg.h"
#include "oodlab/testing.h"
#include "oodlab/training.h"

namespace oodlab {
namespace {

using nlohmann::json;
using boost::multiprecision::cpp_rational;

// Parameter access with defaults. Every value read is recorded so the report
// can embed the fully resolved configuration; keys never read are rejected.
class Params {
 public:
  explicit Params(const json& given) : given_(given) {
    if (!given_.is_object()) throw InvalidArgument("params must be a JSON object");
  }

  template <class T>
  T get(const std::string& key, const T& fallback) {
    T value = fallback;
    if (auto it = given_.find(key); it != given_.end()) {
      try {
        value = it->get<T>();
      } catch (const json::exception&) {
        throw InvalidArgument("parameter '" + key + "' has the wrong type");
      }
    }
    resolved_[key] = value;
    return value;
  }

  std::size_t count(const std::string& key, std::int64_t fallback) {
    const auto v = get<std::int64_t>(key, fallback);
    if (v < 1) throw InvalidArgument("parameter '" + key + "' must be a positive integer");
    return static_cast<std::size_t>(v);
  }

  double probability(const std::string& key, double fallback) {
    const double v = get<double>(key, fallback);
    if (!(v > 0.0 && v < 1.0)) throw InvalidArgument("parameter '" + key + "' must be in (0, 1)");
    return v;
  }

  Distribution distribution(const std::string& key, const Distribution& fallback) {
    json raw = to_json(fallback);
    if (auto it = given_.find(key); it != given_.end()) raw = *it;
    Distribution d = distribution_from_json(raw);
    resolved_[key] = to_json(d);
    return d;
  }

  // Records a value computed from other parameters.
  void resolve(const std::string& key, json value) { resolved_[key] = std::move(value); }

  void check_unused() const {
    for (const auto& item : given_.items()) {
      if (!resolved_.contains(item.key())) {
        throw InvalidArgument("unknown parameter '" + item.key() + "'");
      }
    }
  }

  const json& resolved() const { return resolved_; }

 private:
  json given_;
  json resolved_ = json::object();
};

struct Context {
  Params params;
  std::uint64_t seed;
  std::optional<std::size_t> requested_n;
  std::optional<std::size_t> n;  // resolved sample count, when the scenario uses one
  bool plots;
  ScenarioOutput& out;
  json results = json::object();
  json notes = json::array();

  std::size_t sample_count(std::size_t fallback) {
    n = requested_n.value_or(fallback);
    return *n;
  }

  void table(std::string name, std::string contents) {
    out.tables.push_back({std::move(name), std::move(contents)});
  }

  // Plot failures degrade to a warning.
  void plot(std::string name, const std::function<std::string()>& render) {
    if (!plots) return;
    try {
      out.plots.push_back({std::move(name), render()});
    } catch (const std::exception& e) {
      out.warnings.push_back("plot " + name + " skipped: " + e.what());
    }
  }
};

std::vector<double> log_density_scores(const Distribution& model,
                                       const std::vector<RealPoint>& xs) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(log_prob(model, std::span<const double>(x)));
  return out;
}

std::vector<RealPoint> draw_real(const Distribution& dist, Rng rng, std::size_t n) {
  std::vector<RealPoint> xs;
  xs.reserve(n);
  for (const auto& s : sample(dist, rng, n)) xs.push_back(std::get<RealPoint>(s));
  return xs;
}

std::vector<double> apply_statistic(const FittedStatistic& stat, const std::vector<Sample>& xs) {
  return stat.evaluate_all(xs);
}

std::string histogram_csv(const std::vector<HistogramSeries>& series, std::size_t bins) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& s : series) {
    for (double v : s.values) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  std::vector<std::string> header{"bin_lo", "bin_hi"};
  for (const auto& s : series) header.push_back(s.label);
  CsvTable table(header);
  const double width = (hi - lo) / static_cast<double>(bins);
  std::vector<std::vector<std::size_t>> counts(series.size(), std::vector<std::size_t>(bins, 0));
  for (std::size_t i = 0; i < series.size(); ++i) {
    for (double v : series[i].values) {
      const auto b = width > 0.0 ? std::min(bins - 1, static_cast<std::size_t>((v - lo) / width))
                                 : std::size_t{0};
      ++counts[i][b];
    }
  }
  for (std::size_t b = 0; b < bins; ++b) {
    std::vector<std::string> row{format_significant(lo + width * static_cast<double>(b)),
                                 format_significant(lo + width * static_cast<double>(b + 1))};
    for (const auto& c : counts) row.push_back(std::to_string(c[b]));
    table.add_row(std::move(row));
  }
  return table.str();
}

// "10^4" for exact powers of ten, the plain integer otherwise.
std::string support_label(std::int64_t v) {
  std::int64_t x = v;
  int e = 0;
  while (x >= 10 && x % 10 == 0) {
    x /= 10;
    ++e;
  }
  if (x == 1 && e > 0) return "10^" + std::to_string(e);
  return std::to_string(v);
}

// ---------------------------------------------------------------------------

void run_fig1(Context& ctx) {
  const std::size_t n = ctx.sample_count(100000);
  const std::size_t n_train = ctx.params.count("n_train", 10000);
  const double alpha = ctx.params.probability("ks_alpha", 0.01);
  ctx.params.check_unused();

  const Distribution p = Distribution::standard_normal(2);
  Rng root(ctx.seed);
  const std::vector<RealPoint> xs = draw_real(p, root.split(0), n);
  std::vector<RealPoint> qs = draw_real(p, root.split(1), n);
  std::vector<RealPoint> rs = draw_real(p, root.split(2), n);
  for (auto& x : qs) x = quadrant_fold(x);
  for (auto& x : rs) x = radial_collapse(x);
  Rng train_rng = root.split(3);
  const std::vector<Sample> train = sample(p, train_rng, n_train);

  const std::vector<double> lp_p = log_density_scores(p, xs);
  const std::vector<double> lp_q = log_density_scores(p, qs);
  const std::vector<double> lp_r = log_density_scores(p, rs);

  const double ks_pq = ks_distance(lp_p, lp_q);
  const double ks_pr = ks_distance(lp_p, lp_r);
  const double critical = ks_critical_value(alpha, n, n);

  const FittedStatistic typ = FittedStatistic::typicality(p, train);
  const auto typ_scores = [&](const std::vector<double>& lps) {
    std::vector<double> s;
    s.reserve(lps.size());
    for (double v : lps) s.push_back(typ.evaluate_loglik(v));
    return s;
  };
  const double auc_ll_q = roc_and_auc(lp_p, lp_q, true).auc;
  const double auc_ll_r = roc_and_auc(lp_p, lp_r, true).auc;
  const double auc_typ_q = roc_and_auc(typ_scores(lp_p), typ_scores(lp_q), false).auc;
  const double auc_typ_r = roc_and_auc(typ_scores(lp_p), typ_scores(lp_r), false).auc;

  json& r = ctx.results;
  r["ks_p_vs_q"] = ks_pq;
  r["ks_p_vs_r"] = ks_pr;
  r["ks_critical_value"] = critical;
  r["ks_below_critical"] = ks_pq < critical && ks_pr < critical;
  r["auc_loglik_q"] = auc_ll_q;
  r["auc_typicality_q"] = auc_typ_q;
  r["auc_loglik_r"] = auc_ll_r;
  r["auc_typicality_r"] = auc_typ_r;
  bool near_chance = true;
  for (double a : {auc_ll_q, auc_typ_q, auc_ll_r, auc_typ_r}) {
    near_chance = near_chance && a >= 0.49 && a <= 0.51;
  }
  r["aucs_within_0_49_0_51"] = near_chance;
  r["entropy_true"] = entropy(p);
  r["entropy_hat"] = *typ.train_entropy_hat();
  ctx.notes.push_back("P is the 2-D standard normal. Q flips x2 on P draws with x1 x2 < 0, "
                      "landing in quadrants I and III. R maps each draw onto the diagonal "
                      "x1 = x2 at the same radius. Neither changes the law of log p.");

  std::vector<HistogramSeries> series{{"P", lp_p}, {"Q", lp_q}, {"R", lp_r}};
  ctx.table("fig1_log_density_hist.csv", histogram_csv(series, 60));
  ctx.plot("fig1_log_density_hist.svg",
           [&] { return svg_histograms("log p scores under P, Q and R", series); });
}

void run_table1(Context& ctx) {
  const auto supp_p = ctx.params.get<std::int64_t>("supp_p", 1000000);
  const auto supp_q =
      ctx.params.get<std::vector<std::int64_t>>("supp_q", {10000, 1000, 100});
  if (supp_q.empty()) throw InvalidArgument("supp_q must list at least one support size");
  std::vector<double> default_eps;
  for (std::int64_t s : supp_q) {
    default_eps.push_back(static_cast<double>(s) / static_cast<double>(supp_p));
  }
  const auto eps = ctx.params.get<std::vector<double>>("epsilon", default_eps);
  if (eps.size() != supp_q.size()) throw InvalidArgument("epsilon and supp_q differ in length");
  ctx.params.check_unused();

  std::vector<std::string> header{"Oracle"};
  std::vector<std::string> row;
  std::vector<double> bars;
  json columns = json::array();
  double oracle = 0.0;
  for (std::size_t i = 0; i < supp_q.size(); ++i) {
    const EpsilonTransferReport rep = epsilon_transfer({supp_p, supp_q[i], eps[i]});
    if (i == 0) {
      oracle = rep.oracle_ll;
      row.push_back(format_truncated(oracle, 4));
      bars.push_back(oracle);
    }
    header.push_back(support_label(supp_q[i]));
    row.push_back(format_truncated(rep.model_ll_in, 4));
    bars.push_back(rep.model_ll_in);
    json col = to_json(rep);
    col["supp_q"] = supp_q[i];
    col["epsilon"] = eps[i];
    col["min_epsilon"] = min_epsilon(supp_p, supp_q[i]);
    columns.push_back(std::move(col));
  }
  CsvTable table(header);
  table.add_row(row);

  ctx.results["oracle_ll"] = oracle;
  ctx.results["columns"] = std::move(columns);
  ctx.results["table_cells"] = row;
  ctx.notes.push_back("Cells are log-likelihoods in nats of one in-distribution point "
                      "(negative values); the corresponding NLL is their negation.");
  ctx.notes.push_back("Cells are truncated, not rounded, to 4 decimals.");

  ctx.table("table1.csv", table.str());
  ctx.plot("table1.svg", [&] {
    return svg_bar_chart("In-distribution log-likelihood by |supp(Q)|", header, bars);
  });
}

void run_level_set(Context& ctx) {
  const std::size_t n = ctx.sample_count(100000);
  const Distribution base = ctx.params.distribution(
      "base", Distribution::finite_discrete({0.1, 0.1, 0.1, 0.2, 0.25, 0.25}));
  json spec_json = {
      {"base", to_json(base)},
      {"target_level_value", ctx.params.get<double>("target_level_value", 0.1)},
      {"subset_A", ctx.params.get<std::vector<std::int64_t>>("subset_A", {0})},
      {"lambda", ctx.params.get<double>("lambda", 0.5)}};
  ctx.params.check_unused();
  const LevelSetCollapseSpec spec = level_set_spec_from_json(spec_json);
  const Distribution q = level_set_collapse(spec);
  const std::vector<double> p_probs = base.probabilities();
  const std::vector<double> q_probs = q.probabilities();

  const auto masses_p = level_masses(p_probs, p_probs);
  const auto masses_q = level_masses(p_probs, q_probs);
  json levels = json::array();
  double max_diff = 0.0;
  for (const auto& [key, mp] : masses_p) {
    const double mq = masses_q.at(key);
    max_diff = std::max(max_diff, std::abs(mp - mq));
    levels.push_back({{"level", static_cast<double>(key) * 1e-12}, {"mass_p", mp}, {"mass_q", mq}});
  }

  // Exhaustive exact check over every rejection region of the log p score.
  std::vector<double> scores;
  std::vector<cpp_rational> p_exact;
  for (double v : p_probs) {
    scores.push_back(std::log(v));
    p_exact.emplace_back(v);
  }
  const std::vector<cpp_rational> q_exact = collapse_level_set<cpp_rational>(
      p_probs, spec.target_level_value, spec.subset_a, spec.lambda);
  const auto rates = rates_for_all_rejection_regions<cpp_rational>(scores, p_exact, q_exact);
  bool power_equals_size = true;
  for (const auto& rp : rates) power_equals_size = power_equals_size && rp.size == rp.power;

  Rng root(ctx.seed);
  Rng in_rng = root.split(0), out_rng = root.split(1);
  const std::vector<double> in_scores = log_prob(base, sample(base, in_rng, n));
  const std::vector<double> out_scores = log_prob(base, sample(q, out_rng, n));

  json& r = ctx.results;
  r["q"] = to_json(q);
  r["levels"] = std::move(levels);
  r["max_level_mass_difference"] = max_diff;
  r["q_differs_from_p"] = p_probs != q_probs;
  r["rejection_regions_checked"] = rates.size();
  r["power_equals_size_exactly"] = power_equals_size;
  r["auc_loglik_monte_carlo"] = roc_and_auc(in_scores, out_scores, true).auc;
  ctx.notes.push_back("Q moves mass inside one level set of P, so every function of p has the "
                      "same law under P and Q.");

  CsvTable table({"outcome", "p", "q"});
  for (std::size_t i = 0; i < p_probs.size(); ++i) {
    table.add_row({std::to_string(i), format_significant(p_probs[i]),
                   format_significant(q_probs[i])});
  }
  ctx.table("level_set.csv", table.str());
}

void run_wrong_model(Context& ctx) {
  const std::size_t n = ctx.sample_count(100000);
  const Distribution p = ctx.params.distribution("p", Distribution::normal(0.0, 1.0));
  const Distribution q = ctx.params.distribution("q", Distribution::normal(2.0, 4.0));
  ctx.params.check_unused();

  Rng rng(ctx.seed);
  const WrongModelReport rep = wrong_model_report(p, q, n, rng);
  ctx.results = to_json(rep);
  ctx.results["auc_gain"] = rep.auc_lr_model - rep.auc_true;
  ctx.notes.push_back("lr_model has density proportional to p/q; its log density is an "
                      "increasing function of the likelihood ratio.");

  CsvTable table({"size", "power_true", "power_lr_model"});
  for (int k = 0; k <= 1000; ++k) {
    const double a = k / 1000.0;
    table.add_numeric_row(
        {a, power_at_size(rep.roc_true, a), power_at_size(rep.roc_lr_model, a)});
  }
  ctx.table("wrong_model_roc.csv", table.str());
  ctx.plot("wrong_model_roc.svg", [&] {
    return svg_roc_curves("ROC: true model vs likelihood-ratio model",
                          {{"log p", rep.roc_true}, {"log p_theta", rep.roc_lr_model}});
  });
}

void run_overlap_bound(Context& ctx) {
  const std::size_t n = ctx.sample_count(100000);
  const Distribution p = ctx.params.distribution("p", Distribution::normal(0.0, 1.0));
  const Distribution q = ctx.params.distribution("q", Distribution::normal(2.0, 1.0));
  const std::size_t n_train = ctx.params.count("n_train", 2000);
  const double margin = ctx.params.get<double>("margin", 0.01);
  ctx.params.check_unused();

  const double be = bayes_error(p, q);
  Rng root(ctx.seed);
  Rng in_rng = root.split(0), out_rng = root.split(1), train_rng = root.split(2);
  const std::vector<Sample> xs = sample(p, in_rng, n);
  const std::vector<Sample> ys = sample(q, out_rng, n);
  const std::vector<Sample> train = sample(p, train_rng, n_train);

  const std::vector<FittedStatistic> stats{
      FittedStatistic::log_lik(p), FittedStatistic::typicality(p, train),
      FittedStatistic::likelihood_ratio(p, q), FittedStatistic::dose_lite(p, train)};
  json per_stat = json::object();
  CsvTable table({"statistic", "auc", "best_accuracy", "accuracy_bound"});
  bool within = true;
  for (const auto& stat : stats) {
    const RocResult roc =
        roc_and_auc(apply_statistic(stat, xs), apply_statistic(stat, ys), stat.larger_is_in());
    const double acc = best_threshold_accuracy(roc);
    const bool ok = acc <= 1.0 - be + margin;
    within = within && ok;
    const std::string name(statistic_name(stat.kind()));
    per_stat[name] = {{"auc", roc.auc}, {"best_accuracy", acc}, {"within_bound", ok}};
    table.add_row({name, format_significant(roc.auc), format_significant(acc),
                   format_significant(1.0 - be)});
  }

  json& r = ctx.results;
  r["bayes_error"] = be;
  r["accuracy_bound"] = 1.0 - be;
  r["statistics"] = std::move(per_stat);
  r["all_within_bound"] = within;
  const auto* gp = std::get_if<DiagonalGaussian>(&p.variant());
  const auto* gq = std::get_if<DiagonalGaussian>(&q.variant());
  if (gp && gq && gp->mean.size() == 1 && gq->mean.size() == 1 &&
      gp->variance[0] == gq->variance[0]) {
    r["bayes_error_closed_form"] =
        normal_cdf(-std::abs(gp->mean[0] - gq->mean[0]) / (2.0 * std::sqrt(gp->variance[0])));
  }
  ctx.notes.push_back("Accuracy is balanced: half the test points come from each distribution.");
  ctx.table("overlap_bound.csv", table.str());
}

void run_bernoulli_typical(Context& ctx) {
  const std::size_t n = ctx.sample_count(1000000);
  const std::size_t d = ctx.params.count("d", 100);
  const double prob = ctx.params.probability("success_prob", 0.75);
  const auto epsilons = ctx.params.get<std::vector<double>>("epsilons", {0.0, 0.1, 0.3});
  ctx.params.check_unused();
  if (epsilons.empty()) throw InvalidArgument("epsilons must not be empty");

  Rng root(ctx.seed);
  json rows = json::array();
  CsvTable table({"epsilon", "mass_exact", "mass_monte_carlo", "z100_typical", "z75_typical"});
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    const TypicalSetSpec spec{d, prob, epsilons[i]};
    validate(spec);
    Rng mc_rng = root.split(i);
    const double exact = typical_mass(spec);
    const double mc = typical_mass_monte_carlo(spec, n, mc_rng);
    json row = {{"epsilon", spec.epsilon},
                {"typical_mass", exact},
                {"typical_mass_monte_carlo", mc},
                {"monte_carlo_abs_error", std::abs(exact - mc)},
                {"entropy_per_symbol", entropy(Distribution::product_bernoulli(1, prob))}};
    const double z100_dev = typical_deviation(d, spec);
    const double z75_dev = typical_deviation(3 * d / 4, spec);
    row["z100_in_typical_set"] = z100_dev <= spec.epsilon;
    row["z100_deviation"] = z100_dev;
    if (d % 4 == 0) {
      row["swap"] = to_json(swap_set_comparison(spec));
      row["z75_in_typical_set"] = z75_dev <= spec.epsilon;
    }
    table.add_row({format_significant(spec.epsilon), format_significant(exact),
                   format_significant(mc), z100_dev <= spec.epsilon ? "1" : "0",
                   d % 4 == 0 ? (z75_dev <= spec.epsilon ? "1" : "0") : ""});
    rows.push_back(std::move(row));
  }
  ctx.results["by_epsilon"] = std::move(rows);
  ctx.notes.push_back("z100 is the all-ones sequence, the single most likely outcome; z75 has "
                      "ones in its first three quarters and zeros after.");
  if (d % 4 != 0) {
    ctx.notes.push_back("d is not divisible by 4, so z75 and the swap set are skipped.");
  }
  ctx.table("typical_set.csv", table.str());
}

void run_nt_train(Context& ctx) {
  GridToyConfig toy_config;
  toy_config.n_train_in = ctx.sample_count(1000);
  toy_config.k = ctx.params.count("k", 64);
  toy_config.in_bins = ctx.params.count("in_bins", 48);
  toy_config.ood_bins = ctx.params.count("ood_bins", 8);
  toy_config.zipf_exponent = ctx.params.get<double>("zipf_exponent", 1.5);
  toy_config.n_train_ood = ctx.params.count("n_train_ood", 200);
  toy_config.n_test_in = ctx.params.count("n_test_in", 1000);
  toy_config.n_test_ood = ctx.params.count("n_test_ood", 200);
  TrainConfig train;
  train.learning_rate = ctx.params.get<double>("learning_rate", 1.0);
  train.steps = ctx.params.count("steps", 2000);
  train.seed = ctx.seed;
  // A number, or null for no floor.
  const json clamp = ctx.params.get<json>("clamp_c", kDefaultClamp);
  if (clamp.is_null()) {
    train.clamp_c = -std::numeric_limits<double>::infinity();
  } else if (clamp.is_number()) {
    train.clamp_c = clamp.get<double>();
  } else {
    throw InvalidArgument("parameter 'clamp_c' must be a number or null");
  }
  const std::size_t replicates = ctx.params.count("replicates", 5);
  ctx.params.check_unused();

  Rng root(ctx.seed);
  json runs = json::array();
  bool all_auc_one = true;
  double max_gap = 0.0;
  CsvTable traces({"replicate", "step", "mle_objective", "nt_objective"});
  CsvTable probs({"replicate", "bin", "p_in", "p_ood", "mle", "nt"});
  for (std::size_t rep = 0; rep < replicates; ++rep) {
    Rng rng = root.split(rep);
    const GridToy toy = make_grid_toy(toy_config, rng);
    const FitResult mle = grid_mle_fit(toy.train_in, train);
    const FitResult nt = grid_nt_fit(toy.train_in, toy.train_ood, train);
    const GridEvaluation em = evaluate_grid(mle.model, toy.test_in, toy.test_ood);
    const GridEvaluation en = evaluate_grid(nt.model, toy.test_in, toy.test_ood);
    const auto in_end = toy.train_in.begin() + static_cast<std::ptrdiff_t>(toy_config.in_bins);
    const auto empty_bins =
        static_cast<std::size_t>(std::count(toy.train_in.begin(), in_end, std::int64_t{0}));
    const auto to_j = [](const GridEvaluation& e) {
      return json{{"mean_ll_in", e.mean_ll_in},
                  {"mean_ll_ood", e.mean_ll_ood ? json(*e.mean_ll_ood) : json()},
                  {"auc", e.auc ? json(*e.auc) : json()}};
    };
    all_auc_one = all_auc_one && en.auc && *en.auc == 1.0;
    const double gap = em.mean_ll_in - en.mean_ll_in;
    max_gap = std::max(max_gap, std::abs(gap));
    runs.push_back({{"replicate", rep},
                    {"empty_in_support_training_bins", empty_bins},
                    {"mle", to_j(em)},
                    {"nt", to_j(en)},
                    {"ll_gap_mle_minus_nt", gap}});
    for (std::size_t s = 0; s < mle.objective_trace.size(); s += 10) {
      traces.add_row({std::to_string(rep), std::to_string(s),
                      format_significant(mle.objective_trace[s]),
                      format_significant(nt.objective_trace[s])});
    }
    const std::vector<double> pm = mle.model.probabilities(), pn = nt.model.probabilities();
    for (std::size_t k = 0; k < pm.size(); ++k) {
      probs.add_row({std::to_string(rep), std::to_string(k), format_significant(toy.in_probs[k]),
                     format_significant(toy.ood_probs[k]), format_significant(pm[k]),
                     format_significant(pn[k])});
    }
  }
  ctx.results["replicates"] = std::move(runs);
  ctx.results["nt_auc_one_all_replicates"] = all_auc_one;
  ctx.results["max_abs_ll_gap"] = max_gap;
  ctx.notes.push_back("The OOD term is -mean max(log p, clamp_c): an OOD bin stops being pushed "
                      "down once its log probability reaches clamp_c.");
  ctx.table("nt_train_traces.csv", traces.str());
  ctx.table("nt_train_probabilities.csv", probs.str());
}

using Runner = void (*)(Context&);

const std::map<std::string, Runner, std::less<>>& runners() {
  static const std::map<std::string, Runner, std::less<>> table = {
      {"fig1", run_fig1},
      {"table1", run_table1},
      {"level-set", run_level_set},
      {"wrong-model", run_wrong_model},
      {"overlap-bound", run_overlap_bound},
      {"bernoulli-typical", run_bernoulli_typical},
      {"nt-train", run_nt_train}};
  return table;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  f << contents;
  f.close();
  if (!f) throw Error("cannot write " + path.string());
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {"fig1",          "table1",
                                                 "level-set",     "wrong-model",
                                                 "overlap-bound", "bernoulli-typical",
                                                 "nt-train"};
  return names;
}

bool is_known_scenario(std::string_view name) { return runners().contains(name); }

ScenarioConfig scenario_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
  ScenarioConfig c;
  try {
    for (const auto& item : j.items()) {
      const std::string& key = item.key();
      if (key == "scenario") {
        c.scenario = item.value().get<std::string>();
      } else if (key == "seed") {
        c.seed = item.value().get<std::uint64_t>();
      } else if (key == "n") {
        if (!item.value().is_null()) {
          const auto n = item.value().get<std::int64_t>();
          if (n < 1) throw InvalidArgument("n must be positive");
          c.sample_count = static_cast<std::size_t>(n);
        }
      } else if (key == "params") {
        c.params = item.value();
      } else if (key == "plots") {
        c.plots = item.value().get<bool>();
      } else {
        throw InvalidArgument("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed config: ") + e.what());
  }
  return c;
}

ScenarioOutput compute_scenario(const ScenarioConfig& config) {
  const auto it = runners().find(config.scenario);
  if (it == runners().end()) throw UnknownScenario(config.scenario);
  if (config.sample_count && *config.sample_count < 1) {
    throw InvalidArgument("sample count must be positive");
  }
  ScenarioOutput out;
  Context ctx{Params(config.params), config.seed, config.sample_count, std::nullopt,
              config.plots, out};
  it->second(ctx);

  const json n = ctx.n ? json(*ctx.n) : json();
  json artifacts = json::array();
  for (const auto& t : out.tables) artifacts.push_back(t.filename);
  for (const auto& p : out.plots) artifacts.push_back(p.filename);
  out.report = {{"schema_version", kReportSchemaVersion},
                {"scenario", config.scenario},
                {"seed", config.seed},
                {"n", n},
                {"config",
                 {{"scenario", config.scenario},
                  {"seed", config.seed},
                  {"n", n},
                  {"params", ctx.params.resolved()},
                  {"plots", config.plots}}},
                {"results", std::move(ctx.results)},
                {"notes", std::move(ctx.notes)},
                {"artifacts", std::move(artifacts)}};
  return out;
}

int run_scenario(const ScenarioConfig& config, std::ostream& err) {
  if (!is_known_scenario(config.scenario)) {
    std::string names;
    for (const auto& s : scenario_names()) names += (names.empty() ? "" : ", ") + s;
    err << "error: unknown scenario '" << config.scenario << "' (expected one of: " << names
        << ")\n";
    return 2;
  }
  ScenarioOutput out;
  try {
    out = compute_scenario(config);
  } catch (const InvalidArgument& e) {
    err << "error: invalid parameters: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << config.scenario << " failed: " << e.what() << '\n';
    return 1;
  }
  try {
    std::filesystem::create_directories(config.output_dir);
    write_file(config.output_dir / "report.json", out.report.dump(2) + "\n");
    for (const auto& t : out.tables) write_file(config.output_dir / t.filename, t.contents);
  } catch (const std::exception& e) {
    err << "error: writing results to " << config.output_dir.string() << ": " << e.what()
        << '\n';
    return 1;
  }
  for (const auto& p : out.plots) {
    try {
      write_file(config.output_dir / p.filename, p.contents);
    } catch (const std::exception& e) {
      out.warnings.push_back(e.what());
    }
  }
  for (const auto& w : out.warnings) err << "warning: " << w << '\n';
  return 0;
}

}  // namespace oodlab
