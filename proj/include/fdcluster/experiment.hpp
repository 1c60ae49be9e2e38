#pragma once

#include <string>
#include <vector>

#include "fdcluster/eval.hpp"
#include "fdcluster/simgen.hpp"

namespace fdc {

/// Metric selection before a spectrum exists; bound per replicate dataset.
/// Text forms: "l2", "dp:<log10p>" (e.g. "dp:8", "dp:-2"), "truncated:<K>".
struct MetricChoice {
  MetricKind kind = MetricKind::L2;
  double log10p = 0.0;  // GeneralizedMahalanobis only
  int K = 3;            // TruncatedMahalanobis only

  static MetricChoice parse(const std::string& text);
  std::string label() const;
  MetricSpec bind(std::shared_ptr<const Spectrum> spectrum) const;
};

struct ExperimentConfig {
  ScenarioSpec scenario;  // scenario.seed is ignored; seeds derive from `seed`
  int k = 2;
  int replicates = 50;
  std::uint64_t seed = 0;
  int max_iter = 200;
  int n_restarts = 1;  // per paper protocol: one k-means run per replicate
  int jobs = 1;
};

/// Aggregate of one metric over the replicates: confusion counts after
/// optimal label matching, averaged cell-wise, with the spread of the
/// matched diagonal.
struct MetricAggregate {
  std::string metric_label;
  std::vector<std::vector<double>> mean_counts;  // k x k, rows matched to truth order
  std::vector<double> sd_diagonal;               // sample sd of each diagonal cell
  double mean_correct_rate = 0.0;
  double sd_correct_rate = 0.0;
  std::vector<double> replicate_rates;
};

/// Replicated simulation study: per replicate draws a fresh dataset, fits
/// the pooled spectrum once, runs k-means for every metric, and scores
/// against the generating groups. Replicate r uses substream r of `seed`
/// (generation on nested stream 0, metric m on nested stream 1+m), so
/// results are independent of `jobs` and bitwise reproducible.
std::vector<MetricAggregate> run_experiment(const ExperimentConfig& config,
                                            const std::vector<MetricChoice>& metrics);

/// Mean misclassification of d_p k-means versus log10(p), over replicated
/// scenario datasets (the datasets are shared across grid points).
std::vector<SweepPoint> sweep_scenario(const ExperimentConfig& config,
                                       const std::vector<double>& log10p_grid);

/// The figures' plotted range: log10 p in {-6, -4, -2, 0, 2, 4, 6, 8}.
std::vector<double> default_log10p_grid();

}  // namespace fdc
